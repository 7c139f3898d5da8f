"""Published reference values for the constants and root approximations.

All values are printed to four decimals at the source; compare with an
absolute tolerance of ``1e-4``.
"""

from __future__ import annotations

__all__ = ["TABLE_N", "TABLE_X", "TABLE_BETA", "SIMPLE_B", "CHI2_10_B", "CHI2_10_A", "POWER_EXP_ROOTS", "TOLERANCE"]

TOLERANCE = 1e-4

TABLE_N = (1e1, 1e2, 1e3, 1e4, 1e5, 1e6)

# K = e, C = tau = alpha = 1, x0 = 1
SIMPLE_B = {
    "exact": (4.8897, 7.6384, 10.2334, 12.7564, 15.2366, 17.6884),
    "standard": (4.1366, 7.1323, 9.8404, 12.4307, 14.9564, 17.4413),
    "improved": (4.8590, 7.6364, 10.2371, 12.7613, 15.2416, 17.6931),
}

CHI2_10_B = {
    "exact": (15.9872, 23.2093, 29.5883, 35.5640, 41.2962, 46.8630),
    "standard": (4.9213, 15.0717, 22.9606, 29.8272, 36.2175, 42.2812),
    "improved": (13.3518, 22.0874, 29.0421, 35.2855, 41.1581, 46.8045),
}

CHI2_10_A = {
    "exact": (4.0032, 3.0520, 2.7411, 2.5805, 2.4805, 2.4117),
    "standard": (2.0, 2.0, 2.0, 2.0, 2.0, 2.0),
    "improved": (4.9896, 3.1358, 2.7604, 2.5864, 2.4825, 2.4123),
}

TABLE_X = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
TABLE_BETA = (0.5, 4.0)

# root t of t**beta e**-t = x, its Lambert-route (t_W) and Comtet-route (t_C) approximations
POWER_EXP_ROOTS = {
    0.5: {
        "t": (2.8212, 5.4533, 7.9440, 10.3803, 12.7871, 15.1753),
        "t_W": (2.8124, 5.4554, 7.9464, 10.3824, 12.7889, 15.1768),
        "t_C": (2.8102, 5.4517, 7.9440, 10.3808, 12.7877, 15.1759),
    },
    4.0: {
        "t": (12.3607, 15.5923, 18.6005, 21.4786, 24.2699, 26.9987),
        "t_W": (11.9175, 15.3431, 18.4547, 21.3922, 24.2198, 26.9717),
        "t_C": (11.4342, 16.0199, 19.1148, 21.9488, 24.6826, 27.3597),
    },
}
