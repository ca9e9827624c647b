"""
Exact cyclotomic arithmetic package.
"""
