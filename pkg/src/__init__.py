"""
APUnroll - colorings of Z_m and [n] with few monochromatic progressions
"""
__version__ = "0.1.0"
