"""
Vercel serverless entry point for the spectra HTTP API
"""

from app.main import app

# Vercel manages the ASGI server; no uvicorn.run() here
