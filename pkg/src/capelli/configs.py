"""Capelli configurations, the classes C^m, the staged map Lambda and its fibers.

A configuration is a permutation sigma of {1..n} together with a choice
phi(i) in {1..i} at every fixed point i of sigma.  Indices are 1-based
throughout, matching the usual matrix notation.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Mapping

from .polynomial import permutation_sign

__all__ = [
    "Permutation",
    "CapelliConfig",
    "sign",
    "in_class",
    "enumerate_configs",
    "class_size",
    "lambda_step",
    "lambda_full",
    "lambda_trace",
    "fiber",
    "full_fiber",
    "involution_D",
    "config_to_json",
    "config_from_json",
    "diagram",
]


@dataclass(frozen=True)
class Permutation:
    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(v) for v in self.image)
        if sorted(image) != list(range(1, len(image) + 1)):
            raise ValueError(f"{list(image)} is not a permutation of 1..{len(image)}")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.image, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.image, start=1) if i == v)

    def sign(self) -> int:
        return permutation_sign(self.image)

    def with_values(self, updates: Mapping[int, int]) -> "Permutation":
        image = list(self.image)
        for i, v in updates.items():
            image[i - 1] = v
        return Permutation(tuple(image))


@dataclass(frozen=True)
class CapelliConfig:
    """(sigma, phi) with phi defined exactly on the fixed points of sigma."""

    sigma: Permutation
    phi: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        sigma = self.sigma
        if not isinstance(sigma, Permutation):
            sigma = Permutation(tuple(sigma))
            object.__setattr__(self, "sigma", sigma)
        phi = self.phi
        if isinstance(phi, Mapping):
            phi = phi.items()
        phi = tuple(sorted((int(i), int(v)) for i, v in phi))
        object.__setattr__(self, "phi", phi)
        domain = [i for i, _ in phi]
        if domain != list(sigma.fixed_points()):
            raise ValueError(
                f"phi must be defined exactly on Fix(sigma) = {list(sigma.fixed_points())}, got {domain}"
            )
        for i, v in phi:
            if not 1 <= v <= i:
                raise ValueError(f"phi({i}) = {v} outside 1..{i}")

    @property
    def n(self) -> int:
        return self.sigma.n

    def phi_map(self) -> dict[int, int]:
        return dict(self.phi)

    def deficient(self) -> tuple[int, ...]:
        """Fixed points k with phi(k) < k."""
        return tuple(i for i, v in self.phi if v < i)

    def sign(self) -> int:
        return self.sigma.sign()


def sign(p: Permutation | CapelliConfig) -> int:
    return p.sign()


def in_class(c: CapelliConfig, m: int) -> bool:
    """Membership in C^m: every deficient fixed point k satisfies k >= m."""
    if not 1 <= m <= c.n + 1:
        raise ValueError(f"class index m={m} outside 1..{c.n + 1}")
    return all(k >= m for k in c.deficient())


def enumerate_configs(n: int, m: int = 1) -> list[CapelliConfig]:
    """All of C^m in lexicographic sigma order, then mixed-radix phi order."""
    if n < 1:
        raise ValueError("n must be positive")
    if not 1 <= m <= n + 1:
        raise ValueError(f"class index m={m} outside 1..{n + 1}")
    out = []
    for image in itertools.permutations(range(1, n + 1)):
        sigma = Permutation(image)
        fixed = sigma.fixed_points()
        choices = [range(1, k + 1) if k >= m else (k,) for k in fixed]
        for values in itertools.product(*choices):
            out.append(CapelliConfig(sigma, tuple(zip(fixed, values))))
    return out


def class_size(n: int, m: int = 1) -> int:
    """|C^m| = sum over sigma of the product of i over fixed points i >= m."""
    total = 0
    for image in itertools.permutations(range(1, n + 1)):
        weight = 1
        for i, v in enumerate(image, start=1):
            if i == v and i >= m:
                weight *= i
        total += weight
    return total


def lambda_step(c: CapelliConfig, m: int) -> CapelliConfig:
    """One stage Lambda^m : C^m -> C^{m+1}.

    If m is a deficient fixed point, splice it into the cycle through phi(m):
    sigma'(phi(m)) = m, sigma'(m) = sigma(phi(m)).  Otherwise pass through.
    """
    if not 1 <= m <= c.n:
        raise ValueError(f"step index m={m} outside 1..{c.n}")
    if not in_class(c, m):
        raise ValueError(f"configuration is not in C^{m}")
    sigma = c.sigma
    phi = c.phi_map()
    if sigma(m) != m or phi[m] == m:
        return c
    target = phi[m]
    new_sigma = sigma.with_values({target: m, m: sigma(target)})
    # sigma(target) == target drops both m and target from the fixed points
    new_phi = {i: v for i, v in phi.items() if new_sigma(i) == i}
    return CapelliConfig(new_sigma, new_phi)


def lambda_trace(c: CapelliConfig) -> list[CapelliConfig]:
    """[c, Lambda^1 c, Lambda^2 Lambda^1 c, ...]; length n + 1."""
    out = [c]
    for m in range(1, c.n + 1):
        out.append(lambda_step(out[-1], m))
    return out


def lambda_full(c: CapelliConfig) -> CapelliConfig:
    return lambda_trace(c)[-1]


def fiber(target: CapelliConfig, m: int) -> list[CapelliConfig]:
    """All c in C^m with lambda_step(c, m) == target (target first)."""
    n = target.n
    if not 1 <= m <= n:
        raise ValueError(f"step index m={m} outside 1..{n}")
    if not in_class(target, m + 1):
        raise ValueError(f"target is not in C^{m + 1}")
    out = [target]
    sigma = target.sigma
    i = sigma.inverse()(m)
    if i < m:
        j = sigma(m)
        pre_sigma = sigma.with_values({i: j, m: m})
        pre_phi = target.phi_map()
        pre_phi[m] = i
        if j == i:
            # i becomes fixed below m; C^m forces phi(i) = i
            pre_phi[i] = i
        out.append(CapelliConfig(pre_sigma, pre_phi))
    return out


def full_fiber(target: CapelliConfig) -> list[CapelliConfig]:
    """All c in C^1 with lambda_full(c) == target."""
    if not in_class(target, target.n + 1):
        raise ValueError("target is not in C = C^{n+1}")
    layer = [target]
    for m in range(target.n, 0, -1):
        layer = [pre for c in layer for pre in fiber(c, m)]
    return layer


def involution_D(c: CapelliConfig, m: int) -> CapelliConfig:
    """Swap the values of sigma at positions 1 and m; phi is the identity on
    new fixed points in {1, m} and kept elsewhere.  Fixed-point-free on C^{m+1}."""
    if m < 2:
        raise ValueError("the involution needs m >= 2")
    if m > c.n:
        raise ValueError(f"m={m} exceeds n={c.n}")
    if not in_class(c, m + 1):
        raise ValueError(f"configuration is not in C^{m + 1}")
    sigma = c.sigma
    new_sigma = sigma.with_values({1: sigma(m), m: sigma(1)})
    old_phi = c.phi_map()
    new_phi = {}
    for k in new_sigma.fixed_points():
        new_phi[k] = k if k in (1, m) else old_phi[k]
    return CapelliConfig(new_sigma, new_phi)


def config_to_json(c: CapelliConfig) -> str:
    return json.dumps(
        {"n": c.n, "sigma": list(c.sigma.image), "phi": {str(i): v for i, v in c.phi}},
        separators=(",", ":"),
    )


def config_from_json(text: str | Mapping) -> CapelliConfig:
    data = json.loads(text) if isinstance(text, str) else text
    try:
        sigma = [int(v) for v in data["sigma"]]
        phi = {int(i): int(v) for i, v in data.get("phi", {}).items()}
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ValueError(f"malformed configuration: {exc}") from exc
    if "n" in data and int(data["n"]) != len(sigma):
        raise ValueError(f"n={data['n']} does not match sigma of length {len(sigma)}")
    return CapelliConfig(Permutation(tuple(sigma)), phi)


def diagram(c: CapelliConfig) -> str:
    """Two-line ASCII picture: the indices, then one arrow per index.

    ``i->j`` for sigma(i) = j (self-loops when phi(i) = i), ``i=>v`` for a
    deficient fixed point with phi(i) = v.
    """
    phi = c.phi_map()
    arrows = []
    for i in range(1, c.n + 1):
        if i in phi and phi[i] < i:
            arrows.append(f"{i}=>{phi[i]}")
        else:
            arrows.append(f"{i}->{c.sigma(i)}")
    width = max(len(a) for a in arrows)
    header = " ".join(str(i).ljust(width) for i in range(1, c.n + 1)).rstrip()
    body = " ".join(a.ljust(width) for a in arrows).rstrip()
    return f"{header}\n{body}"

