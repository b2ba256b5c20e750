"""Models used throughout the tests and fixtures, built programmatically."""

from __future__ import annotations

from .extensions import KSExtensionSpec
from .model import MinimalModel


def hspace_k5_k8() -> MinimalModel:
    """Λ(x₃, y₃, z₅, w₇) with dz = xy, dw = xz; B aut₁ is K(ℚ,5) × K(ℚ,8)."""
    return MinimalModel.build([("x", 3), ("y", 3), ("z", 5), ("w", 7)],
                              {"z": "x*y", "w": "x*z"})


def rank_one_quadratic(r: int = 2) -> MinimalModel:
    """Λ(x₁..x_r in degree 2, y₃) with dy = x₁x₂."""
    gens = [(f"x{i}", 2) for i in range(1, r + 1)] + [("y", 3)]
    return MinimalModel.build(gens, {"y": "x1*x2"})


def uv_model(r: int, m: int) -> MinimalModel:
    """Λ(u_{2m+1}, v_{2m+r}, y_{4m+r}) with dy = uv."""
    return MinimalModel.build([("u", 2 * m + 1), ("v", 2 * m + r), ("y", 4 * m + r)],
                              {"y": "u*v"})


def uv_extension(model: MinimalModel, r: int, trivial: bool = False) -> KSExtensionSpec:
    """Adjoin z_r with 𝒟v = uz (or no perturbation at all)."""
    return KSExtensionSpec.build(model, "z", r, {} if trivial else {"v": "u*z"})


def sphere_pair_model(n: int) -> MinimalModel:
    """Six generators v₁, v₂ (n+1), w (2n), u₁, u₂ (3n), y (4n), n odd."""
    return MinimalModel.build(
        [("v1", n + 1), ("v2", n + 1), ("w", 2 * n), ("u1", 3 * n), ("u2", 3 * n), ("y", 4 * n)],
        {"y": "u1*v1 + u2*v2", "u1": "-v2*w", "u2": "v1*w"})


def s5_model() -> MinimalModel:
    """Λ(v₂, u₃, y₄) with dy = uv; B aut₁ is S⁵."""
    return MinimalModel.build([("v", 2), ("u", 3), ("y", 4)], {"y": "u*v"})


def quadratic_pairing_model(r: int) -> MinimalModel:
    """v₁..v_r in degree 2, u₁..u_r in degree 3, y₄ with dy = Σ uᵢvᵢ."""
    gens = [(f"v{i}", 2) for i in range(1, r + 1)] + [(f"u{i}", 3) for i in range(1, r + 1)]
    gens.append(("y", 4))
    return MinimalModel.build(gens, {"y": " + ".join(f"u{i}*v{i}" for i in range(1, r + 1))})


def quadratic_pairing_extension(model: MinimalModel, sign: int = -1) -> KSExtensionSpec:
    """Adjoin z₂ with 𝒟u₁ = zv₂ and 𝒟u₂ = sign·zv₁.

    ``sign = -1`` is the choice that squares to zero; ``+1`` does not.
    """
    second = "z*v1" if sign > 0 else "-z*v1"
    return KSExtensionSpec.build(model, "z", 2, {"u1": "z*v2", "u2": second})


def k2_k4_k7_model(q: int = 0) -> MinimalModel:
    """Λ(v₂, x₃, u₅, y₆) with dy = uv + v²x + q·v³."""
    expr = "u*v + v^2*x" + (f" + {q}*v^3" if q else "")
    return MinimalModel.build([("v", 2), ("x", 3), ("u", 5), ("y", 6)], {"y": expr})


NON_UNIVERSAL_GENERATORS = [("a", 2), ("b", 2), ("c", 2), ("x", 3), ("y", 3), ("z", 3),
                            ("phi", 4), ("psi", 4), ("w", 5)]


def non_universal_model(printed_signs: bool = False) -> MinimalModel:
    """Generators in degrees 2–5 whose differential admits no positive weights.

    With ``printed_signs`` the ψ differential is ``cy - az``, for which
    ``d²w = 2acy - 2a²z``; the default ``az - cy`` squares to zero.
    """
    dpsi = "c*y - a*z" if printed_signs else "a*z - c*y"
    return MinimalModel.build(NON_UNIVERSAL_GENERATORS, {
        "x": "a^2 + a*c", "y": "a*b", "z": "b*c",
        "phi": "x*b - a*y - a*z", "psi": dpsi,
        "w": "phi*a + x*y + psi*a + c^3 + b^3"})


def exterior(degree: int, name: str = "x") -> MinimalModel:
    """A single generator with zero differential, i.e. K(ℚ, degree)."""
    return MinimalModel.build([(name, degree)])
