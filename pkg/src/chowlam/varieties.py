"""Input and output records: subvarieties of Gr(k,n) and computed forms."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .grassmann import plucker_table, subsets, var_name
from .polyengine import Polynomial, VarTable, from_json_obj, parse_polynomial, to_json_obj


def _schubert_ge(J, I) -> bool:
    return all(j >= i for j, i in zip(J, I))


@dataclass
class VarietySpec:
    """A subvariety of Gr(k,n) described in dual Pluecker variables ``q[I]``.

    Exactly one presentation is used: ``positroid`` (rank 2 partition),
    ``schubert`` (index set I, the Schubert variety S_I), ``generators``
    (explicit polynomials) or ``matrix`` (a k x n matrix of polynomials in
    parameters whose row space sweeps out the variety).  ``r`` is the
    integer with dim = k(r-k) - 1 (Chow-Lam setting) or k(r-k) (Hurwitz-Lam
    setting).
    """

    k: int
    n: int
    r: int | None = None
    positroid: tuple | None = None
    schubert: tuple | None = None
    generators: list | None = None
    matrix: list | None = None
    name: str | None = None
    sampler: str | None = None

    def __post_init__(self):
        given = [x is not None for x in (self.positroid, self.schubert, self.generators, self.matrix)]
        if sum(given) != 1:
            raise ValueError("exactly one presentation must be given")
        if self.positroid is not None:
            beta = tuple(int(b) for b in self.positroid)
            if self.k != 2:
                raise ValueError("partitions encode rank 2 positroids only")
            if sum(beta) != self.n or any(a < b for a, b in zip(beta, beta[1:])) or min(beta) < 1:
                raise ValueError(f"{beta} is not a partition of {self.n}")
            self.positroid = beta
            t = len(beta)
            if self.r is None:
                if (self.n + t + 1) % 2:
                    raise ValueError("n - t must be odd for a Chow-Lam setting")
                self.r = (self.n + t + 1) // 2
        if self.schubert is not None:
            I = tuple(int(i) for i in self.schubert)
            if len(I) != self.k:
                raise ValueError("Schubert index set must have k entries")
            self.schubert = I
            if self.r is None:
                # rows supported on columns >= i_s
                dim = self.k * (self.n - self.k) - sum(i - s for s, i in enumerate(I, start=1))
                if (dim + 1) % self.k:
                    raise ValueError("Schubert variety dimension is not k(r-k)-1")
                self.r = (dim + 1) // self.k + self.k
        if self.r is None:
            raise ValueError("r must be given for this presentation")

    @property
    def table(self) -> VarTable:
        return plucker_table("q", self.k, self.n)

    @property
    def expected_dim(self) -> int:
        return self.k * (self.r - self.k) - 1

    @property
    def kind(self) -> str:
        for name in ("positroid", "schubert", "generators", "matrix"):
            if getattr(self, name) is not None:
                return name
        raise AssertionError

    def blocks(self):
        """Blocks of consecutive indices for a positroid partition."""
        out, start = [], 1
        for b in self.positroid:
            out.append(tuple(range(start, start + b)))
            start += b
        return out

    def ideal_generators(self) -> list[Polynomial]:
        """Polynomials in ``q[I]`` cutting out the variety (with the Pluecker ideal)."""
        T = self.table
        if self.positroid is not None:
            out = []
            for blk in self.blocks():
                for i in blk:
                    for j in blk:
                        if i < j:
                            out.append(Polynomial.var(T, var_name("q", (i, j))))
            return out
        if self.schubert is not None:
            return [Polynomial.var(T, var_name("q", J)) for J in subsets(self.n, self.k)
                    if not _schubert_ge(J, self.schubert)]
        if self.generators is not None:
            return [g.to_table(T) for g in self.generators]
        raise ValueError("parametrized varieties have no explicit generators; use implicitization")

    def label(self) -> str:
        if self.name:
            return self.name
        if self.positroid is not None:
            return "positroid-" + "".join(map(str, self.positroid))
        if self.schubert is not None:
            return "schubert-" + "".join(map(str, self.schubert))
        return f"generators-{self.k}-{self.n}"

    # -- serialization
    def to_json_obj(self) -> dict:
        obj = {"k": self.k, "n": self.n, "r": self.r}
        if self.name:
            obj["name"] = self.name
        if self.positroid is not None:
            obj["positroid"] = list(self.positroid)
        if self.schubert is not None:
            obj["schubert"] = list(self.schubert)
        if self.generators is not None:
            obj["generators"] = [g.to_table(self.table).to_text() for g in self.generators]
        if self.matrix is not None:
            obj["matrix"] = [[x.to_text() if isinstance(x, Polynomial) else str(x) for x in row]
                             for row in self.matrix]
        if self.sampler:
            obj["sampler"] = self.sampler
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "VarietySpec":
        k, n = int(obj["k"]), int(obj["n"])
        kw = dict(k=k, n=n, r=obj.get("r"), name=obj.get("name"), sampler=obj.get("sampler"))
        if "positroid" in obj:
            kw["positroid"] = tuple(obj["positroid"])
        elif "schubert" in obj:
            kw["schubert"] = tuple(obj["schubert"])
        elif "generators" in obj:
            T = plucker_table("q", k, n)
            kw["generators"] = [_load_poly(g, T) for g in obj["generators"]]
        elif "matrix" in obj:
            kw["matrix"] = obj["matrix"]
        else:
            raise ValueError("variety JSON needs positroid, schubert, generators or matrix")
        return cls(**kw)

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "VarietySpec":
        return cls.from_json_obj(json.loads(text))

    def digest(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()[:16]


def _load_poly(obj, table):
    if isinstance(obj, str):
        return parse_polynomial(obj, table)
    return from_json_obj(obj).to_table(table)


@dataclass
class FormResult:
    """A computed form.  ``form`` is None exactly when the locus is degenerate,
    in which case ``witness`` holds generators of the Chow-Lam locus."""

    form: Polynomial | None
    ambient: tuple
    coordinate_kind: str
    degree: int
    witness: list = field(default_factory=list)
    verification: dict | None = None
    label: str = ""
    method: str = ""

    @property
    def degenerate(self) -> bool:
        return self.form is None

    def to_json_obj(self) -> dict:
        obj = {
            "label": self.label,
            "method": self.method,
            "ambient": list(self.ambient),
            "coordinate_kind": self.coordinate_kind,
            "degree": self.degree,
            "degenerate": self.degenerate,
        }
        if self.form is not None:
            obj["form"] = to_json_obj(self.form)
            obj["form_text"] = self.form.to_text()
        else:
            obj["witness"] = [to_json_obj(w) for w in self.witness]
            obj["witness_text"] = [w.to_text() for w in self.witness]
        if self.verification is not None:
            obj["verification"] = self.verification
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "FormResult":
        form = from_json_obj(obj["form"]) if obj.get("form") else None
        witness = [from_json_obj(w) for w in obj.get("witness", [])]
        return cls(form, tuple(obj["ambient"]), obj["coordinate_kind"], int(obj["degree"]),
                   witness, obj.get("verification"), obj.get("label", ""), obj.get("method", ""))

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "FormResult":
        return cls.from_json_obj(json.loads(text))
