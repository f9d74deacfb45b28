"""Named morphic words used throughout the examples and the verification suite."""

from __future__ import annotations

from .words import Morphism, PrefixBuffer

MORPHISMS = {
    "thue-morse": "0->01 1->10",
    "fibonacci": "0->01 1->0",
    "tribonacci": "0->01 1->02 2->0",
    "ternary-tm": "0->012 1->120 2->201",
    "vtm": "0->012 1->02 2->1",
    "collinear-example": "0->012 1->112002 2->",
    "cww": "0->01 1->12 2->20",
    "ccss": "0->03 1->43 3->1 4->01",
}


def lm_thue_morse(l: int, m: int) -> Morphism:
    """``0 -> 0 l m``, ``l -> l m 0``, ``m -> m 0 l`` over the letters ``{0, l, m}``."""
    if not 0 < l < m:
        raise ValueError("need 0 < l < m")
    return Morphism({0: (0, l, m), l: (l, m, 0), m: (m, 0, l)})


def vtm_variant(lam: int) -> Morphism:
    """vtm with the letter 2 renamed to ``lam``."""
    if lam in (0, 1):
        raise ValueError("lam must differ from 0 and 1")
    return Morphism({0: (0, 1, lam), 1: (0, lam), lam: (1,)})


def morphism(name: str) -> Morphism:
    """Look up a catalog name; also accepts ``tm:L,M`` and ``vtm:LAM``."""
    if name in MORPHISMS:
        return Morphism.parse(MORPHISMS[name])
    kind, _, arg = name.partition(":")
    try:
        if kind == "tm":
            l, m = (int(x) for x in arg.split(","))
            return lm_thue_morse(l, m)
        if kind == "vtm":
            return vtm_variant(int(arg))
    except ValueError as exc:
        raise KeyError(f"bad word parameters in {name!r}: {exc}") from None
    raise KeyError(f"unknown word {name!r}; known: {', '.join(sorted(MORPHISMS))}, tm:L,M, vtm:LAM")


def word(name: str, seed: int = 0) -> PrefixBuffer:
    return PrefixBuffer.from_morphism(morphism(name), seed, name=name)
