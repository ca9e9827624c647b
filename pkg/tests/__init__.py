"""
Test package for remez_lab.
"""
