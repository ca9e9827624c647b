"""
Polynomial interchange package.
"""
