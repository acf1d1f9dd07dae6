"""Desk-scale BVR missile-shot generator and imbalanced-learning benchmark."""

__version__ = "0.1.0"
