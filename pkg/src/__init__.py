# q-series identity verifier
