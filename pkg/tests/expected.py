"""Published result rows used as fixed reference values."""

# s -> (k, m, m_u), admissible squares
SQUARES = {
    0: (1, 1, 1), 1: (3, 1, 1), 2: (4, 1, 1), 3: (7, 15, 10), 4: (8, 8, 5),
    5: (11, 137, 76), 6: (12, 24, 14), 7: (14, 14, 9), 8: (16, 103, 54),
    9: (19, 3531, 1792),
}

# s -> (k*, m, m_u), restricted squares
RESTRICTED_SQUARES = {
    10: (20, 17, 4), 12: (24, 58, 16), 14: (28, 163, 28), 16: (32, 451, 72),
    18: (36, 2047, 276),
}

# (s_x, s_y) -> (k, delta_k, m_u), admissible rectangles
RECTS = {
    (0, 0): (1, 0, 1),
    (1, 0): (2, 0, 1), (1, 1): (3, 0, 1),
    (2, 0): (2, 0, 1), (2, 1): (4, 0, 3), (2, 2): (4, 0, 1),
    (3, 0): (3, 0, 2), (3, 1): (5, 0, 6), (3, 2): (6, 0, 16), (3, 3): (7, 0, 10),
    (4, 0): (3, 0, 2), (4, 1): (5, -1, 3), (4, 2): (6, 0, 6), (4, 3): (8, 0, 75),
    (4, 4): (8, 0, 5),
    (5, 0): (4, 0, 5), (5, 1): (6, -1, 10), (5, 2): (7, -1, 1), (5, 3): (9, 0, 86),
    (5, 4): (10, 0, 283), (5, 5): (11, 0, 76),
    (6, 0): (4, 0, 5), (6, 1): (6, -2, 4), (6, 2): (8, 0, 101), (6, 3): (9, -1, 1),
    (6, 4): (10, 0, 16), (6, 5): (12, 0, 660), (6, 6): (12, 0, 14),
    (7, 0): (4, -1, 2), (7, 1): (7, -2, 28), (7, 2): (8, -2, 5), (7, 3): (10, -1, 25),
    (7, 4): (11, -1, 50), (7, 5): (13, 0, 924), (7, 6): (14, 0, 3576),
    (7, 7): (14, -1, 9),
}

# (s_x, s_y) -> (k*, delta_k, m_u or None), restricted spot rows
RESTRICTED_SPOT = {
    (14, 2): (12, -4, 7),
    (12, 2): (10, -4, None),
    (16, 4): (16, -4, 1),
}
