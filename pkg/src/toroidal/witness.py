from __future__ import annotations

from dataclasses import dataclass

from .errors import DescriptorError, NotInCategory
from .exact import LaurentPoly, poly_lcm, poly_roots_multiplicity_free

CATEGORIES = ("E_tau", "E_tau_prime", "R_tilde", "C_tau")


@dataclass(frozen=True)
class CategoryWitness:
    """Polynomials p0, ..., pr certifying membership in one of the four categories.

    ``p0`` is None exactly for ``R_tilde``.  ``p`` holds p1..pr.
    """

    category: str
    p0: LaurentPoly | None
    p: tuple[LaurentPoly, ...]

    def __post_init__(self):
        if self.category not in CATEGORIES:
            raise NotInCategory(f"unknown category {self.category!r}")
        if self.category == "R_tilde":
            if self.p0 is not None:
                raise NotInCategory("an R_tilde witness carries no p0")
        elif self.p0 is None or self.p0.is_zero():
            raise NotInCategory(f"{self.category} needs a nonzero p0")
        for i, pi in enumerate(self.p, start=1):
            if pi.is_zero():
                raise NotInCategory(f"p{i} is zero")
            if self.category != "E_tau" and not poly_roots_multiplicity_free(pi):
                raise NotInCategory(f"nonzero roots of p{i} = {pi} are not multiplicity-free")

    @property
    def rank(self) -> int:
        return len(self.p)

    def poly(self, i: int) -> LaurentPoly | None:
        return self.p0 if i == 0 else self.p[i - 1]

    def to_json(self) -> dict:
        return {
            "category": self.category,
            "p": [None if self.p0 is None else self.p0.to_json()] + [q.to_json() for q in self.p],
        }

    @classmethod
    def from_json(cls, data) -> CategoryWitness:
        try:
            polys = data["p"]
            p0 = None if polys[0] is None else LaurentPoly.from_json(polys[0])
            return cls(data["category"], p0, tuple(LaurentPoly.from_json(q) for q in polys[1:]))
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            if isinstance(exc, NotInCategory):
                raise
            raise DescriptorError(f"malformed witness: {exc}", field="witness") from exc

    def __str__(self) -> str:
        parts = [f"p0 = {self.p0}" if self.p0 is not None else "p0 = (none)"]
        parts += [f"p{i} = {q}" for i, q in enumerate(self.p, start=1)]
        return f"{self.category}: " + ", ".join(parts)


def combine_witnesses(witnesses) -> CategoryWitness:
    """Witness for a tensor product: lcm of the factors' polynomials."""
    witnesses = list(witnesses)
    if not witnesses:
        raise NotInCategory("no witnesses to combine")
    r = witnesses[0].rank
    if any(w.rank != r for w in witnesses):
        raise NotInCategory("witness ranks differ")
    tags = {w.category for w in witnesses}
    p = []
    for i in range(r):
        acc = witnesses[0].p[i]
        for w in witnesses[1:]:
            acc = poly_lcm(acc, w.p[i])
        p.append(acc)
    p0s = [w.p0 for w in witnesses if w.p0 is not None]
    p0 = None
    if p0s:
        p0 = p0s[0]
        for q in p0s[1:]:
            p0 = poly_lcm(p0, q)
    if tags == {"R_tilde"}:
        category = "R_tilde"
    elif "R_tilde" not in tags:
        category = "E_tau" if "E_tau" in tags else "E_tau_prime"
    else:
        category = "C_tau"
    return CategoryWitness(category, p0, tuple(p))
