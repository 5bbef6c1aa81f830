"""
Positions of the edge sites of a ladder embedded in three dimensions.

On a Moebius ladder the band turns by half a revolution as it goes round
the ring, so at angle phi the two edges sit at

    r_{+-}(phi) = (cos(phi) (R +- w sin(phi/2)),
                   sin(phi) (R +- w sin(phi/2)),
                   +-w cos(phi/2))

and following an edge once round lands on the other edge. The ordinary
ring is an untwisted vertical band, r_{+-}(phi) = (R cos(phi), R sin(phi), +-w).
"""
import numpy as np

from .base import Boundary


class SiteCoordinates(object):
    """
    Edge-site positions of a ladder.

    Args:
        upper (array): (N, 3) positions r_{j+} of the a sites.
        lower (array): (N, 3) positions r_{j-} of the b sites.
    """
    def __init__(self, upper, lower):
        self._upper = np.array(upper, dtype=float)
        self._lower = np.array(lower, dtype=float)
        if self._upper.shape != self._lower.shape or self._upper.shape[-1:] != (3,):
            raise ValueError("upper and lower must both have shape (N, 3)")
        self._upper.setflags(write=False)
        self._lower.setflags(write=False)

    @property
    def upper(self):
        return self._upper

    @property
    def lower(self):
        return self._lower

    @property
    def positions(self):
        """(N, 2, 3) array of (r_{j+}, r_{j-}) pairs."""
        return np.stack([self._upper, self._lower], axis=1)

    @property
    def heights(self):
        """z_{j+} - z_{j-} for every rung."""
        return self._upper[:, 2] - self._lower[:, 2]

    def __len__(self):
        return len(self._upper)

    def __repr__(self):
        return "<SiteCoordinates: {} rungs>".format(len(self))


def embed(phi, radius, half_width, edge, boundary=Boundary.MOEBIUS):
    """
    Evaluates the embedding of one edge at arbitrary angles.

    Args:
        phi (float or array): Polar angle(s).
        radius (float): Ring radius R.
        half_width (float): Half-width w.
        edge (int): +1 for the a edge, -1 for the b edge.
        boundary (Boundary): Twisted or untwisted band.

    Returns:
        numpy.ndarray of shape phi.shape + (3,)
    """
    phi = np.asarray(phi, dtype=float)
    if Boundary(boundary) is Boundary.MOEBIUS:
        rho = radius + edge * half_width * np.sin(phi / 2)
        z = edge * half_width * np.cos(phi / 2)
    else:
        rho = radius * np.ones_like(phi)
        z = edge * half_width * np.ones_like(phi)
    return np.stack([np.cos(phi) * rho, np.sin(phi) * rho, z], axis=-1)


def build_geometry(spec):
    """
    Edge-site coordinates for every rung of a ladder.

    Args:
        spec (LadderSpec): The ladder.

    Returns:
        SiteCoordinates
    """
    phi = spec.angles
    upper = embed(phi, spec.radius, spec.half_width, +1, spec.boundary)
    lower = embed(phi, spec.radius, spec.half_width, -1, spec.boundary)
    return SiteCoordinates(upper, lower)
