"""
Fixed words of the H₃ / H₄ constructions.

All words are spelled over the role letters r, s, t, u, where o(rs) = 5 and t
is the H₃ vertex. ``StandardWords`` relabels them onto the vertex names of an
actual diagram. The T_r orientation (o(rt) = 3) is obtained from the T_s one by
exchanging r and s and conjugating by c̄ = srsr.
"""

from dataclasses import dataclass
from typing import Dict, Optional

from src.coxcore.words import EMPTY, Word

OMEGA_1 = Word.parse("rsturstrsrstusrstrs")
OMEGA_2 = Word.parse("tsrsrutsrsrtsrsutsrsr")
OMEGA_3 = Word.parse("srsrutsrsrtsrsutsrsrtsr")
UTU = Word.parse("utu")
OMEGA = Word.parse("rsrsr") + OMEGA_2
PI = OMEGA + OMEGA_1 + UTU
TAU = Word.parse("trs") + OMEGA_3 + OMEGA.inverse()

C = Word.parse("rsrs")
C_BAR = Word.parse("srsr")
SRS = Word.parse("srs")

# H₃ words for the two orientations
H3_OMEGA_S = Word.parse("tsrtst")
H3_PI_S = Word.parse("trs")
H3_OMEGA_R = Word.parse("srstrsrt")
H3_PI_R = Word.parse("srsrstr")

_SWAP = {"r": "s", "s": "r"}


def bar(word: Word) -> Word:
    """Exchange r and s."""
    return word.relabel(_SWAP)


def case_words(side: Optional[str], k: Optional[int]) -> Dict[str, Word]:
    """
    ω_t, π_t (and τ for k = 4) in role letters. ``side`` is "s" for T_s, "r"
    for T_r and None for the symbol ∞.
    """
    if side is None:
        return {"omega": EMPTY, "pi": SRS}
    if k == 3:
        if side == "s":
            return {"omega": H3_OMEGA_S, "pi": H3_PI_S}
        return {"omega": H3_OMEGA_R, "pi": H3_PI_R}
    if k != 4:
        raise ValueError(f"no standard words for k={k}")
    if side == "s":
        return {"omega": OMEGA, "pi": PI, "tau": TAU}
    omega = Word.parse("r") + bar(OMEGA_2)
    return {
        "omega": omega,
        "pi": omega + bar(OMEGA_1) + UTU,
        "tau": C_BAR + bar(TAU) + C_BAR.inverse(),
    }


@dataclass(frozen=True)
class StandardWords:
    """The case words of one t ∈ T̂, spelled over actual vertex names."""

    side: Optional[str]
    k: Optional[int]
    roles: Dict[str, str]
    omega_t: Word
    pi_t: Word
    tau: Optional[Word]

    @classmethod
    def build(
        cls,
        r: str,
        s: str,
        t: Optional[str] = None,
        u: Optional[str] = None,
        side: Optional[str] = None,
    ) -> "StandardWords":
        roles = {"r": r, "s": s}
        k = None
        if t is not None:
            roles["t"] = t
            k = 3
            if u is not None:
                roles["u"] = u
                k = 4
        words = case_words(side if t is not None else None, k)
        tau = words.get("tau")
        return cls(
            side=side if t is not None else None,
            k=k,
            roles=roles,
            omega_t=words["omega"].relabel(roles),
            pi_t=words["pi"].relabel(roles),
            tau=tau.relabel(roles) if tau is not None else None,
        )

    def spell(self, role_word: Word) -> Word:
        """Relabel any role-letter word onto the bound vertex names."""
        return role_word.relabel(self.roles)

    @property
    def srs(self) -> Word:
        return self.spell(SRS)
