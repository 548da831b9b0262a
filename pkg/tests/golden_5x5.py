"""Nonsymmetric 5x5 spectra from the closed-form radical expressions, evaluated at 50 digits."""

GOLDEN_5X5 = {
    (1, 1, 1, 1): [(1, 0), (1, 0), (-1, 0), (0.525731112119134, 0.85065080835204), (-0.525731112119134, 0.85065080835204)],
    (4, 4, 4, 4): [(1, 0), (1, 0), (-1, 0), (0.525731112119134, -0.85065080835204), (-0.525731112119134, -0.85065080835204)],
    (2, 2, 2, 2): [(1, 0), (-1, 0), (-1, 0), (0.85065080835204, 0.525731112119134), (-0.85065080835204, 0.525731112119134)],
    (3, 3, 3, 3): [(1, 0), (-1, 0), (-1, 0), (0.85065080835204, -0.525731112119134), (-0.85065080835204, -0.525731112119134)],
    (1, 2, 2, 4): [(1, 0), (-1, 0), (0.309016994374947, 0.951056516295154), (0.626057369557992, -0.779777000187956), (-0.935074363932939, 0.354451596011936)],
    (1, 3, 3, 4): [(1, 0), (-1, 0), (0.309016994374947, -0.951056516295154), (0.626057369557992, 0.779777000187956), (-0.935074363932939, -0.354451596011936)],
    (1, 1, 2, 3): [(1, 0), (-1, 0), (0.809016994374947, 0.587785252292473), (-0.124835603127467, 0.992177439872426), (-0.684181391247481, -0.729311883812859)],
    (2, 3, 4, 4): [(1, 0), (-1, 0), (0.809016994374947, -0.587785252292473), (-0.124835603127467, -0.992177439872426), (-0.684181391247481, 0.729311883812859)],
}
