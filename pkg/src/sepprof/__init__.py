"""sepprof: Cheeger constants, cuts, separation/Poincare profiles, and
lamplighter diagonal products, with machine-checked inequality suites."""

__version__ = "0.1.0"
