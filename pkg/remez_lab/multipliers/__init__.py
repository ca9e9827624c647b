"""
Support multipliers, inseparable parts and certified constants.
"""
