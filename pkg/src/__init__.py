"""
Crossing-Depth Toolkit
Exact crossing distance between flats of a hyperplane arrangement, regression depth
of lines in R^2 and R^3, and Tukey depth in R^2.
"""

__version__ = "1.0.0"
