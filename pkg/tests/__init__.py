# Tests for the q-series engine, catalog and command line
