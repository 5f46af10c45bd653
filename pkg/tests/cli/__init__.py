"""
Command line tests package initialization.
"""
