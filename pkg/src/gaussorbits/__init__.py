"""Exact classification of isotropy-orbit Gauss-map degeneracy.

Subpackages:

- ``rootsys``: exact root systems in Bourbaki coordinates
- ``pairdb``: database of irreducible compact symmetric pairs
- ``orbits``: tangential-degeneracy classification of orbits
- ``ferus``: Adams/Ferus number arithmetic and equality scans
- ``cayley``: strongly orthogonal roots and root-system projection
- ``report``: table/JSON/CSV emitters
- ``cli``: command-line frontend
"""

__version__ = "0.1.0"
