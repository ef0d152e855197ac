"""
Tropical matroid Schubert varieties: matroids, augmented Bergman fans, the face
complex of Y_M, its tropical cohomology, the rank spectral sequence and the
graded algebras compared by the verification checks.

The package has no Flask dependency; the service layers import it.
"""
