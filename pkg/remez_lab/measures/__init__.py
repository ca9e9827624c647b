"""
Moment-matching measures on cyclic groups.
"""
