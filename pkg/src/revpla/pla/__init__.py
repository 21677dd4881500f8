"""PLA function specifications: parsing, serialization and the evaluation oracle."""
