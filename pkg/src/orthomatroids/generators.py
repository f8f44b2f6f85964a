"""Instance generators: standard families, exact ray systems, random and exhaustive catalogs."""

from __future__ import annotations

import enum
import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .axioms import is_orthomatroid
from .errors import DimensionMismatch, InvalidInstance, IsotropicRay, ResourceLimit, ZeroVector
from .orthoset import Orthoset, new_orthoset

DEFAULT_ENUM_MAX_N = 5

Gauss = tuple[int, int]
Scalar = Union[int, Gauss]


def discrete(n: int) -> Orthoset:
    """All distinct elements mutually orthogonal (the Boolean case)."""
    full = (1 << n) - 1
    return Orthoset(n, tuple(full & ~(1 << i) for i in range(n)))


def mo(n: int) -> Orthoset:
    """``n`` orthogonal pairs ``(2i, 2i+1)`` and nothing else, labelled ``a1, a1p, ...``."""
    if n < 1:
        raise InvalidInstance(f"mo(n) needs n >= 1, got {n}")
    labels = [s for i in range(1, n + 1) for s in (f"a{i}", f"a{i}p")]
    return new_orthoset(2 * n, [(2 * i, 2 * i + 1) for i in range(n)], labels)


def random_orthoset(n: int, density: float, seed: int) -> Orthoset:
    """Each unordered pair (in lexicographic order) is orthogonal with probability ``density``."""
    if not 0.0 <= density <= 1.0:
        raise InvalidInstance(f"density must lie in [0, 1], got {density}")
    rng = random.Random(seed)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return new_orthoset(n, pairs)


# --- Gaussian integers as (re, im) pairs -----------------------------------


def g_mul(a: Gauss, b: Gauss) -> Gauss:
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def g_conj(a: Gauss) -> Gauss:
    return a[0], -a[1]


def g_norm(a: Gauss) -> int:
    return a[0] * a[0] + a[1] * a[1]


def _round_div(p: int, q: int) -> int:
    # nearest integer to p/q for q > 0
    return (2 * p + q) // (2 * q)


def g_divmod(a: Gauss, b: Gauss) -> tuple[Gauss, Gauss]:
    num = g_mul(a, g_conj(b))
    n = g_norm(b)
    q = (_round_div(num[0], n), _round_div(num[1], n))
    qb = g_mul(q, b)
    return q, (a[0] - qb[0], a[1] - qb[1])


def g_gcd(a: Gauss, b: Gauss) -> Gauss:
    while b != (0, 0):
        a, b = b, g_divmod(a, b)[1]
    return a


def g_exact_div(a: Gauss, b: Gauss) -> Gauss:
    q, r = g_divmod(a, b)
    assert r == (0, 0)
    return q


_UNITS: tuple[Gauss, ...] = ((1, 0), (0, 1), (-1, 0), (0, -1))


def g_normalize_unit(z: Gauss) -> Gauss:
    """The unit ``u`` with ``u*z`` in the half-open first quadrant (re > 0, im >= 0)."""
    for u in _UNITS:
        w = g_mul(u, z)
        if w[0] > 0 and w[1] >= 0:
            return u
    raise ZeroDivisionError("zero has no normalizing unit")


def format_gauss(z: Gauss) -> str:
    re, im = z
    if im == 0:
        return str(re)
    imag = {1: "i", -1: "-i"}.get(im, f"{im}i")
    if re == 0:
        return imag
    return f"{re}{'+' if im > 0 else ''}{imag}"


def parse_gauss(token: str) -> Gauss:
    """Parse ``3``, ``-2``, ``1+2i``, ``1-i``, ``i``, ``-4i``."""
    tok = token.strip()
    try:
        if not tok.endswith("i"):
            return int(tok), 0
        body = tok[:-1]
        split = max(body.rfind("+"), body.rfind("-"))
        if split > 0:
            re_part, im_part = body[:split], body[split:]
        else:
            re_part, im_part = "0", body
        im = {"": 1, "+": 1, "-": -1}.get(im_part)
        if im is None:
            im = int(im_part)
        return int(re_part), im
    except ValueError:
        raise InvalidInstance(f"cannot parse scalar {token!r}") from None


class FormKind(str, enum.Enum):
    EUCLIDEAN = "euclidean"
    HERMITIAN = "hermitian"


@dataclass(frozen=True)
class FormSpec:
    """Diagonal form ``<x|y> = sum w_i x_i y_i*`` over Q (identity involution) or Q(i) (conjugation).

    ``weights`` defaults to all ones.  Indefinite weights admit isotropic rays.
    """

    kind: FormKind
    dimension: int
    weights: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.dimension < 1:
            raise InvalidInstance(f"form dimension must be >= 1, got {self.dimension}")
        if self.weights is not None:
            if len(self.weights) != self.dimension or 0 in self.weights:
                raise InvalidInstance("weights must be nonzero integers, one per coordinate")

    def weight(self, i: int) -> int:
        return 1 if self.weights is None else self.weights[i]


@dataclass(frozen=True)
class Ray:
    """Canonical representative of a line through the origin.

    Coordinates are ints (Euclidean) or ``(re, im)`` pairs (Hermitian).
    """

    coordinates: tuple
    kind: FormKind

    def __str__(self) -> str:
        if self.kind is FormKind.EUCLIDEAN:
            return "(" + ",".join(str(c) for c in self.coordinates) + ")"
        return "(" + ",".join(format_gauss(c) for c in self.coordinates) + ")"


def canonical_ray(vector: Sequence[Scalar], kind: FormKind) -> Ray:
    """Divide out the content and fix the sign/unit of the first nonzero coordinate."""
    if kind is FormKind.EUCLIDEAN:
        coords = [int(c) for c in vector]
        g = 0
        for c in coords:
            g = math.gcd(g, c)
        if g == 0:
            raise ZeroVector(-1)
        first = next(c for c in coords if c)
        if first < 0:
            g = -g
        return Ray(tuple(c // g for c in coords), kind)
    coords = [_as_gauss(c) for c in vector]
    g: Gauss = (0, 0)
    for c in coords:
        g = g_gcd(g, c) if c != (0, 0) else g
    if g == (0, 0):
        raise ZeroVector(-1)
    reduced = [g_exact_div(c, g) for c in coords]
    first = next(c for c in reduced if c != (0, 0))
    u = g_normalize_unit(first)
    return Ray(tuple(g_mul(u, c) for c in reduced), kind)


def _as_gauss(c: Scalar) -> Gauss:
    if isinstance(c, int):
        return c, 0
    return int(c[0]), int(c[1])


def inner(form: FormSpec, x: Sequence[Scalar], y: Sequence[Scalar]) -> Scalar:
    """Exact value of ``<x|y>``; linear in ``x``, conjugate-linear in ``y``."""
    if form.kind is FormKind.EUCLIDEAN:
        return sum(form.weight(i) * a * b for i, (a, b) in enumerate(zip(x, y)))
    re = im = 0
    for i, (a, b) in enumerate(zip(x, y)):
        p = g_mul(_as_gauss(a), g_conj(_as_gauss(b)))
        re += form.weight(i) * p[0]
        im += form.weight(i) * p[1]
    return re, im


def _is_zero(value: Scalar) -> bool:
    return value == 0 or value == (0, 0)


def from_rays(
    vectors: Sequence[Sequence[Scalar]], form: FormSpec, drop_isotropic: bool = False
) -> tuple[Orthoset, list[Ray]]:
    """Orthoset on the distinct rays spanned by ``vectors``, orthogonal iff ``<x|y> = 0``.

    Rays keep first-occurrence order.  Self-orthogonal rays raise
    :class:`IsotropicRay` unless ``drop_isotropic`` filters them out.
    """
    rays: list[Ray] = []
    seen: set[Ray] = set()
    for pos, v in enumerate(vectors):
        if len(v) != form.dimension:
            raise DimensionMismatch(pos, len(v), form.dimension)
        if all(_is_zero(c) for c in v):
            raise ZeroVector(pos)
        ray = canonical_ray(v, form.kind)
        if ray in seen:
            continue
        if _is_zero(inner(form, ray.coordinates, ray.coordinates)):
            if drop_isotropic:
                continue
            raise IsotropicRay(str(ray))
        seen.add(ray)
        rays.append(ray)
    pairs = []
    for i, r in enumerate(rays):
        for j in range(i + 1, len(rays)):
            value = inner(form, r.coordinates, rays[j].coordinates)
            if form.kind is FormKind.HERMITIAN:
                back = inner(form, rays[j].coordinates, r.coordinates)
                assert back == g_conj(value)
            if _is_zero(value):
                pairs.append((i, j))
    return new_orthoset(len(rays), pairs, [str(r) for r in rays]), rays


def parse_ray_file(text: str, kind: FormKind) -> list[list[Scalar]]:
    """One vector per line, whitespace-separated; ``#`` starts a comment."""
    vectors = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if kind is FormKind.EUCLIDEAN:
            try:
                vectors.append([int(tok) for tok in line.split()])
            except ValueError:
                raise InvalidInstance(f"cannot parse integer vector {line!r}") from None
        else:
            vectors.append([parse_gauss(tok) for tok in line.split()])
    return vectors


def sign_classes(dimension: int, values: Sequence[int] = (-1, 0, 1)) -> list[list[int]]:
    """Nonzero vectors with entries in ``values``, one per ray, in first-occurrence order."""
    out, seen = [], set()
    for v in itertools.product(values, repeat=dimension):
        if any(v):
            key = canonical_ray(v, FormKind.EUCLIDEAN)
            if key not in seen:
                seen.add(key)
                out.append(list(key.coordinates))
    return out


# --- exhaustive catalogs ---------------------------------------------------


def _pair_list(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def relation_code(M: Orthoset) -> int:
    """Bitstring over the pairs in lexicographic order, first pair most significant."""
    pairs = _pair_list(M.n)
    code = 0
    for i, j in pairs:
        code = code << 1 | M.orthogonal(i, j)
    return code


def enumerate_orthosets(n: int, max_n: int = DEFAULT_ENUM_MAX_N) -> Iterator[Orthoset]:
    """Every orthoset on ``{0..n-1}`` in lexicographic bitstring order of the relation."""
    if n > max_n:
        raise ResourceLimit("exhaustive enumeration size n", max_n, n)
    pairs = _pair_list(n)
    m = len(pairs)
    for code in range(1 << m):
        chosen = [pairs[k] for k in range(m) if code >> (m - 1 - k) & 1]
        yield new_orthoset(n, chosen)


def iso_class_key(M: Orthoset) -> int:
    """Least relation code over all relabellings."""
    pairs = M.pairs()
    best = None
    for perm in itertools.permutations(range(M.n)):
        relabelled = new_orthoset(M.n, [(perm[i], perm[j]) for i, j in pairs])
        code = relation_code(relabelled)
        if best is None or code < best:
            best = code
    return 0 if best is None else best


def enumerate_orthomatroids(
    n: int, up_to_iso: bool = False, max_n: int = DEFAULT_ENUM_MAX_N
) -> list[Orthoset]:
    """All orthomatroids on ``n`` labelled elements.

    With ``up_to_iso`` only the lexicographically least member of each
    orthoisomorphism class is kept.
    """
    found = []
    keys: set[int] = set()
    for M in enumerate_orthosets(n, max_n):
        if not is_orthomatroid(M):
            continue
        if up_to_iso:
            key = iso_class_key(M)
            if key in keys:
                continue
            keys.add(key)
        found.append(M)
    return found
