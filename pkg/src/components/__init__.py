# Engine components
