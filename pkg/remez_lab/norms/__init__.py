"""
Norm computations package.
"""
