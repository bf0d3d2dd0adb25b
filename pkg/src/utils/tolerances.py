"""Tolérances numériques fixes de BAPFactor."""

# rang: relatif à la plus grande norme de colonne
TAU_RANK = 1e-10
TOL_LP = 1e-9
TOL_NORM = 1e-8
TOL_AUERBACH = 1e-7
TOL_UNIT = 1e-9
TOL_IDENTITY = 1e-9

# marges additives des inégalités certifiées
BOUND_SLACK = 1e-7
PROPERTY_SLACK = 1e-12

JACOBI_OFF_DIAGONAL = 1e-12
AUERBACH_RELATIVE_IMPROVEMENT = 1e-10

FACTORIZATION_RELATIVE = 1e-8
RECONSTRUCTION = 1e-9

# gradient considéré nul sur un sous-espace
DEGENERATE_GRADIENT = 1e-14
