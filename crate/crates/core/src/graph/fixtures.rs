//! Hard-coded edge lists for named graphs without a compact constructive formula.

pub(crate) const CHVATAL_EDGES: [(usize, usize); 24] = [
    (0, 1),
    (0, 4),
    (0, 6),
    (0, 9),
    (1, 2),
    (1, 5),
    (1, 7),
    (2, 3),
    (2, 6),
    (2, 8),
    (3, 4),
    (3, 7),
    (3, 9),
    (4, 5),
    (4, 8),
    (5, 10),
    (5, 11),
    (6, 10),
    (6, 11),
    (7, 8),
    (7, 11),
    (8, 10),
    (9, 10),
    (9, 11),
];

pub(crate) const TUTTE_EDGES: [(usize, usize); 69] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 4),
    (1, 26),
    (2, 10),
    (2, 11),
    (3, 18),
    (3, 19),
    (4, 5),
    (4, 33),
    (5, 6),
    (5, 29),
    (6, 7),
    (6, 27),
    (7, 8),
    (7, 14),
    (8, 9),
    (8, 38),
    (9, 10),
    (9, 37),
    (10, 39),
    (11, 12),
    (11, 39),
    (12, 13),
    (12, 35),
    (13, 14),
    (13, 15),
    (14, 34),
    (15, 16),
    (15, 22),
    (16, 17),
    (16, 44),
    (17, 18),
    (17, 43),
    (18, 45),
    (19, 20),
    (19, 45),
    (20, 21),
    (20, 41),
    (21, 22),
    (21, 23),
    (22, 40),
    (23, 24),
    (23, 27),
    (24, 25),
    (24, 32),
    (25, 26),
    (25, 31),
    (26, 33),
    (27, 28),
    (28, 29),
    (28, 32),
    (29, 30),
    (30, 31),
    (30, 33),
    (31, 32),
    (34, 35),
    (34, 38),
    (35, 36),
    (36, 37),
    (36, 39),
    (37, 38),
    (40, 41),
    (40, 44),
    (41, 42),
    (42, 43),
    (42, 45),
    (43, 44),
];

pub(crate) const WATKINS_EDGES: [(usize, usize); 75] = [
    (0, 6),
    (0, 9),
    (0, 12),
    (1, 15),
    (1, 18),
    (1, 21),
    (2, 24),
    (2, 27),
    (2, 30),
    (3, 33),
    (3, 36),
    (3, 39),
    (4, 42),
    (4, 45),
    (4, 48),
    (5, 6),
    (5, 13),
    (5, 46),
    (6, 7),
    (7, 8),
    (7, 11),
    (8, 9),
    (8, 40),
    (9, 10),
    (10, 11),
    (10, 14),
    (11, 12),
    (12, 13),
    (13, 26),
    (14, 15),
    (14, 22),
    (15, 16),
    (16, 17),
    (16, 20),
    (17, 18),
    (17, 49),
    (18, 19),
    (19, 20),
    (19, 23),
    (20, 21),
    (21, 22),
    (22, 35),
    (23, 24),
    (23, 31),
    (24, 25),
    (25, 26),
    (25, 29),
    (26, 27),
    (27, 28),
    (28, 29),
    (28, 32),
    (29, 30),
    (30, 31),
    (31, 44),
    (32, 33),
    (32, 40),
    (33, 34),
    (34, 35),
    (34, 38),
    (35, 36),
    (36, 37),
    (37, 38),
    (37, 41),
    (38, 39),
    (39, 40),
    (41, 42),
    (41, 49),
    (42, 43),
    (43, 44),
    (43, 47),
    (44, 45),
    (45, 46),
    (46, 47),
    (47, 48),
    (48, 49),
];
