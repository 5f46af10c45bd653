"""
Service tests package initialization.
"""
