"""Associated curves of a timelike helix, and the helices they produce.

Types 1 and 2 move along the principal normal direction and the binormal
direction of a timelike helix. Both results are again helices, at constant
Lorentzian distance from the reference curve. A non-helix reference shows
the converse: its associated curve is not a helix.
"""

import warnings

import numpy as np

from assoc_helix.associated import hca_construct
from assoc_helix.curve_model import TIMELIKE, CurvatureProfile, integrate_frenet
from assoc_helix.position import AngleRule, HelixParams, hca_position, make_grid, timelike_helix
from assoc_helix.verify import associated_helix_report, distance_constancy, format_reports

s = make_grid((0.0, 1.0), 1e-3)
params = HelixParams.from_n(3**-0.5, AngleRule.SINH)
alpha = timelike_helix(6.0, params, s)

# beta comes to rest where its speed factor vanishes; a RuntimeWarning reports it
# the closed-form type 2 position with constant c is the constructed curve with -c
for kind, built, closed in ((1, {}, {}), (2, {"c": -1.0}, {"c": 1.0})):
    pair = hca_construct(alpha, kind, **built)
    print(f"type {kind}")
    print(format_reports([associated_helix_report(pair), distance_constancy(pair)]))
    gap = np.max(np.abs(hca_position(kind, 6.0, params, s, **closed).points - pair.beta.points))
    print(f"  first point {pair.beta.points[0].round(5)}, closed-form gap {gap:.1e}")

wobbly = integrate_frenet(CurvatureProfile(lambda s: 1 + 0 * s, lambda s: s, TIMELIKE, (0.0, 1.0)))
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    pair = hca_construct(wobbly, 2, c=1.0, require_helix=False)
print("type 2 of kappa = 1, tau = s")
print(format_reports([associated_helix_report(pair)]))
