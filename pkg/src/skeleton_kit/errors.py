"""Exception hierarchy.

Every input-contract failure is a :class:`ValidationError`; the CLI maps
those to exit status 1.
"""

from __future__ import annotations


class SkeletonKitError(Exception):
    pass


class ValidationError(SkeletonKitError, ValueError):
    pass


# complexes


class MissingSingleton(ValidationError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"vertex {vertex!r} has no singleton face")


class NotSubsetClosed(ValidationError):
    def __init__(self, face, missing):
        self.face = face
        self.missing = missing
        super().__init__(f"face {sorted(face, key=str)} lacks its subface {sorted(missing, key=str)}")


class SpecialFiberRelationViolated(ValidationError):
    def __init__(self, face, residual):
        self.face = face
        self.residual = residual
        super().__init__(f"sum of mult_i * c_(i,I) is {residual} on face {sorted(face, key=str)}, not 0")


class NonAdjacentClassNonzero(ValidationError):
    def __init__(self, face, vertex):
        self.face = face
        self.vertex = vertex
        super().__init__(
            f"class of vertex {vertex!r} on face {sorted(face, key=str)} must vanish: "
            "the vertex does not span a face with it"
        )


class RestrictionIncoherent(ValidationError):
    def __init__(self, pair, reason):
        self.pair = pair
        super().__init__(f"restriction {sorted(pair[0], key=str)} -> {sorted(pair[1], key=str)}: {reason}")


class DimensionMismatch(ValidationError):
    pass


class UnknownVertex(ValidationError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"unknown vertex {vertex!r}")


class UnknownFace(ValidationError):
    def __init__(self, face):
        self.face = face
        super().__init__(f"not a face: {sorted(face, key=str)}")


class NotOnFace(ValidationError):
    pass


class NegativeCoordinate(ValidationError):
    pass


# bundles


class StarSupportMismatch(ValidationError):
    pass


class IncompatibleGerms(ValidationError):
    def __init__(self, face, i, j):
        self.face = face
        self.i = i
        self.j = j
        super().__init__(
            f"germs at {i!r} and {j!r} differ non-linearly along face {sorted(face, key=str)}"
        )


class NotLinearGerm(ValidationError):
    def __init__(self, face):
        self.face = face
        super().__init__(f"germ is not linear along face {sorted(face, key=str)}")


# morphisms


class DegreeRelationViolated(ValidationError):
    def __init__(self, vertex, got, expected):
        self.vertex = vertex
        super().__init__(
            f"source vertex {vertex!r}: sum_j mult'_j A[i][j] = {got}, expected mult_i = {expected}"
        )


class ImageNotAFace(ValidationError):
    def __init__(self, face, image):
        self.face = face
        self.image = image
        super().__init__(f"image {sorted(image, key=str)} of face {sorted(face, key=str)} is not a target face")


class ClassIncoherent(ValidationError):
    def __init__(self, face, vertex):
        self.face = face
        self.vertex = vertex
        super().__init__(
            f"class pullback on face {sorted(face, key=str)} does not carry target class of {vertex!r} "
            "to the pulled-back source classes"
        )


class NaturalityViolated(ValidationError):
    def __init__(self, face, larger):
        self.face = face
        self.larger = larger
        super().__init__(
            f"class pullbacks do not commute with restriction "
            f"{sorted(face, key=str)} -> {sorted(larger, key=str)}"
        )


class ImageGermUndefined(ValidationError):
    pass


# curve skeletons


class Disconnected(ValidationError):
    pass


class NotSimple(ValidationError):
    pass


class Empty(ValidationError):
    pass


class NotAPermutation(ValidationError):
    pass


class CocycleMismatch(ValidationError):
    pass


# documents


class DocumentSyntaxError(ValidationError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"syntax error{where}: {message}")


class SchemaError(ValidationError):
    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")
