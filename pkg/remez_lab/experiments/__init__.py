"""
Experiment suites package.
"""
