"""
Polynomial data model package.
"""
