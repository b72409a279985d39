"""
APUnroll CLI - batch commands over the core library
"""
from .main import app, run

__all__ = ['app', 'run']
