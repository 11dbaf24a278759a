from .solver import ColouringResult, colour_class_member, exact_chromatic

__all__ = ['ColouringResult', 'colour_class_member', 'exact_chromatic']
