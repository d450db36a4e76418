"""
Utility Modules

Shared utilities for the Borel ideal toolkit:
- monomial: Exponent-vector monomials and pure lex order
- text_utils: Monomial and index-list parsing and formatting
- file_utils: JSON report I/O
- run_config: Run configuration and size guards
- errors: Exception types
"""
