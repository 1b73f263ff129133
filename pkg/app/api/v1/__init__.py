"""API v1 modules"""
