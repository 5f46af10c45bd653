"""
CLI routes package initialization.
"""
