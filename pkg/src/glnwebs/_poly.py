"""Kernel selection: compiled extension if built, else pure Python."""

try:
    from ._poly_c import IMPL, add_terms, sub_terms, mul_terms, scale_shift_terms
except ImportError:  # pragma: no cover - depends on build environment
    from ._poly_py import IMPL, add_terms, sub_terms, mul_terms, scale_shift_terms

__all__ = ["IMPL", "add_terms", "sub_terms", "mul_terms", "scale_shift_terms"]
