import enum


class LadderInvalidData(ValueError):
    """Raised when we try to build a ladder or a lead with invalid parameters"""
    pass


class LadderInvalidType(Exception):
    """Raised when an operation is handed a valid ladder of the wrong kind"""
    pass


class OperatorNotHermitian(Exception):
    """Raised when we try to build a HermitianOperator from a non-Hermitian matrix"""
    pass


class Boundary(enum.Enum):
    """
    How rung N-1 is glued back onto rung 0.

    MOEBIUS swaps the two edges (A_N = sigma_x A_0), PERIODIC keeps them
    (A_N = A_0).
    """
    MOEBIUS = 'moebius'
    PERIODIC = 'periodic'


class Basis(enum.Enum):
    """Labels the basis an operator or state is written in."""
    SITE_AB = 'site_ab'
    PSEUDO_SPIN = 'pseudo_spin'
    MOMENTUM_SPIN = 'momentum_spin'


class Channel(enum.Enum):
    """Pseudo-spin channel. UP carries the twisted hopping on a Moebius ring."""
    UP = 'up'
    DOWN = 'down'

    @property
    def sign(self):
        """+1 for UP, -1 for DOWN; the sign of the rung term in H_chi."""
        return 1 if self is Channel.UP else -1

    @property
    def offset(self):
        """Position of this channel inside an interleaved (up, down) rung pair."""
        return 0 if self is Channel.UP else 1
