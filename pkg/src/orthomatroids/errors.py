"""Exception hierarchy shared by all modules."""


class OrthoError(Exception):
    """Base class for every error raised by this package."""


class InvalidInstance(OrthoError):
    """Malformed orthoset or lattice input (bad JSON shape, bad types)."""


class SelfOrthogonal(OrthoError):
    def __init__(self, index: int):
        super().__init__(f"element {index} cannot be orthogonal to itself")
        self.index = index


class OutOfRange(OrthoError):
    def __init__(self, index: int, n: int):
        super().__init__(f"element index {index} out of range for n={n}")
        self.index = index
        self.n = n


class NotSymmetric(OrthoError):
    def __init__(self, i: int, j: int):
        super().__init__(f"relation is not symmetric on ({i}, {j})")
        self.pair = (i, j)


class ResourceLimit(OrthoError):
    def __init__(self, what: str, limit: int, reached: int):
        super().__init__(f"{what} exceeded budget {limit} (reached {reached})")
        self.limit = limit
        self.reached = reached


class NotOrthomatroid(OrthoError):
    def __init__(self, verdict=None):
        msg = "orthoset is not an orthomatroid"
        if verdict is not None:
            failed = [v.axiom for v in verdict if not v.holds]
            msg += f" ({', '.join(failed)} fails)"
        super().__init__(msg)
        self.verdict = verdict


class NotOrthoindependent(OrthoError):
    def __init__(self, elements, pair):
        super().__init__(f"set {sorted(elements)} is not orthoindependent: {pair[0]} and {pair[1]} are not orthogonal")
        self.elements = elements
        self.pair = pair


class NotInClosure(OrthoError):
    def __init__(self, elements, span, outside):
        super().__init__(
            f"start set {sorted(elements)} is not contained in the closure {sorted(span)}; "
            f"element {outside} lies outside"
        )
        self.elements = elements
        self.span = span
        self.outside = outside


class RankMismatch(OrthoError):
    """Two maximal orthoindependent subsets of one closed set differ in size."""

    def __init__(self, sizes):
        super().__init__(f"maximal orthoindependent subsets have differing sizes {sorted(sizes)}")
        self.sizes = sizes


class InvalidLattice(OrthoError):
    """External lattice input is not an ortholattice-shaped finite lattice."""


class NotPropositionalSystem(OrthoError):
    def __init__(self, report):
        failing = report.failing()
        super().__init__(f"lattice is not a propositional system (fails: {', '.join(failing)})")
        self.report = report
        self.failing = failing


class NotSimple(OrthoError):
    def __init__(self, element: int, closure):
        super().__init__(f"orthoset is not simple: closure of {{{element}}} is {sorted(closure)}")
        self.element = element
        self.closure = closure


class NotTransitive(OrthoError):
    def __init__(self, x: int, y: int, z: int):
        super().__init__(f"similarity is not transitive: {x}~{y}, {y}~{z} but not {x}~{z}")
        self.triple = (x, y, z)


class ZeroVector(OrthoError):
    def __init__(self, position: int):
        super().__init__(f"vector #{position} is zero")
        self.position = position


class DimensionMismatch(OrthoError):
    def __init__(self, position: int, got: int, expected: int):
        super().__init__(f"vector #{position} has length {got}, expected {expected}")
        self.position = position


class IsotropicRay(OrthoError):
    def __init__(self, vector):
        super().__init__(f"ray {vector} is self-orthogonal under the form")
        self.vector = vector
