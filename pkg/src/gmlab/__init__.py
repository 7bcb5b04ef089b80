"""gmlab: exact-arithmetic verification workbench for the cohomology of
Gr(2,5) and its quadric sections in characteristic p, the exhaustive
vector-field obstruction search, GM/Lagrangian data, lattices, and
Chow-Kunneth projectors."""

__version__ = "0.1.0"
