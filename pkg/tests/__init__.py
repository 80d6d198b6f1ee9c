"""
Tests for the coxeter-sharpening toolkit
"""
