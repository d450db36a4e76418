"""
Test suite for the Borel ideal toolkit
"""
