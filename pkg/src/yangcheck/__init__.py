"""Computer-algebra and numeric checks for the two current algebras built on
the Yang rational R-matrix: the centrally extended Yangian double (circle
Riemann problem, discrete modes) and its half-plane counterpart (line Riemann
problem, continuous modes)."""

__version__ = "0.1.0"
