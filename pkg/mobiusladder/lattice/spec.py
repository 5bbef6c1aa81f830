import numpy as np

from .base import Boundary, LadderInvalidData
from .validators import _validate_integer, _validate_real, _validate_site_array


class LadderSpec(object):
    """
    Full parameterization of a two-leg ladder closed into a ring.

    Rung j sits at polar angle phi_j = 2*pi*j/N. Site a_j carries on-site
    energy +eps_j, site b_j carries -eps_j, and the two are coupled by -V_j.
    Values are read-only after construction; use :meth:`replace` to derive
    a variant.

    Args:
        n_sites (int): Number of rungs N, at least 3.
        radius (float): Ring radius R.
        half_width (float): Half-width w of the band, 0 < w < R.
        hopping (float): Hopping xi along each leg (>= 0). Sets the energy unit.
        rung_couplings (float or array): Rung couplings V_j. A scalar is
            used for every rung.
        onsite_bias (float or array): Bias eps_j. Must stay zero when
            field_strength is given.
        field_strength (float): Perpendicular field E_z. When set, eps_j is
            computed from the edge heights as 2 eps_j = E_z (z_{j+} - z_{j-}).
        boundary (Boundary or str): 'moebius' or 'periodic'.

    Examples:
        >>> spec = LadderSpec(n_sites=12, rung_couplings=50.0)
        >>> periodic = spec.replace(boundary='periodic')
    """
    def __init__(self, n_sites=12, radius=2.0, half_width=0.5, hopping=1.0,
                 rung_couplings=50.0, onsite_bias=0.0, field_strength=None,
                 boundary=Boundary.MOEBIUS):
        self._n_sites = _validate_integer(n_sites, 'n_sites', minimum=3)
        self._radius = _validate_real(radius, 'radius', positive=True)
        self._half_width = _validate_real(half_width, 'half_width', positive=True)
        if self._half_width >= self._radius:
            raise LadderInvalidData("half_width must be smaller than radius, got w={} R={}"
                                    .format(self._half_width, self._radius))
        self._hopping = _validate_real(hopping, 'hopping', nonnegative=True)
        try:
            self._boundary = Boundary(boundary)
        except ValueError:
            raise LadderInvalidData("boundary must be one of {}, got {!r}"
                                    .format([b.value for b in Boundary], boundary))
        self._rung_couplings = _validate_site_array(rung_couplings, 'rung_couplings',
                                                    self._n_sites)

        if field_strength is None:
            self._field_strength = None
            self._onsite_bias = _validate_site_array(onsite_bias, 'onsite_bias',
                                                     self._n_sites)
        else:
            self._field_strength = _validate_real(field_strength, 'field_strength')
            explicit = _validate_site_array(onsite_bias, 'onsite_bias', self._n_sites)
            if np.any(explicit != 0):
                raise LadderInvalidData("onsite_bias and field_strength are mutually exclusive")
            # Imported here: geometry needs a constructed spec
            from .geometry import build_geometry
            coords = build_geometry(self)
            bias = 0.5 * self._field_strength * (coords.upper[:, 2] - coords.lower[:, 2])
            bias.setflags(write=False)
            self._onsite_bias = bias

    @property
    def n_sites(self):
        return self._n_sites

    @property
    def radius(self):
        return self._radius

    @property
    def half_width(self):
        return self._half_width

    @property
    def hopping(self):
        return self._hopping

    @property
    def rung_couplings(self):
        return self._rung_couplings

    @property
    def onsite_bias(self):
        return self._onsite_bias

    @property
    def field_strength(self):
        return self._field_strength

    @property
    def boundary(self):
        return self._boundary

    @property
    def angles(self):
        """Polar angles phi_j = 2*pi*j/N of the rungs."""
        return 2 * np.pi * np.arange(self._n_sites) / self._n_sites

    @property
    def has_bias(self):
        """True when any eps_j is nonzero, which mixes the two channels."""
        return bool(np.any(self._onsite_bias != 0))

    @property
    def is_uniform(self):
        """True when every rung has the same coupling V."""
        return bool(np.all(self._rung_couplings == self._rung_couplings[0]))

    def replace(self, **changes):
        """
        Returns a new LadderSpec with the given constructor arguments changed.

        A spec in field mode keeps its field unless field_strength=None is
        passed explicitly.
        """
        params = {
            'n_sites': self._n_sites,
            'radius': self._radius,
            'half_width': self._half_width,
            'hopping': self._hopping,
            'rung_couplings': self._rung_couplings,
            'boundary': self._boundary,
        }
        if self._field_strength is None:
            params['onsite_bias'] = self._onsite_bias
        else:
            params['field_strength'] = self._field_strength
        params.update(changes)
        return LadderSpec(**params)

    def __repr__(self):
        return ("<LadderSpec: N={s.n_sites} {s.boundary.value} xi={s.hopping} "
                "V={v}>".format(s=self, v=self._rung_couplings[0]
                                if self.is_uniform else 'varying'))
