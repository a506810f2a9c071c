//! Built-in moduli: for each `(p, f)` with `p^f <= 512`, the first primitive monic
//! polynomial of degree `f` over GF(p), ordered by its little-endian coefficient encoding.

pub(crate) static DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 1, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 1, 0, 0, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (5, 1, &[2, 1]),
    (5, 2, &[2, 1, 1]),
    (5, 3, &[2, 3, 0, 1]),
    (7, 1, &[2, 1]),
    (7, 2, &[3, 1, 1]),
    (7, 3, &[2, 3, 0, 1]),
    (11, 1, &[3, 1]),
    (11, 2, &[7, 1, 1]),
    (13, 1, &[2, 1]),
    (13, 2, &[2, 1, 1]),
    (17, 1, &[3, 1]),
    (17, 2, &[3, 1, 1]),
    (19, 1, &[4, 1]),
    (19, 2, &[2, 1, 1]),
    (23, 1, &[2, 1]),
    (29, 1, &[2, 1]),
    (31, 1, &[7, 1]),
    (37, 1, &[2, 1]),
    (41, 1, &[6, 1]),
    (43, 1, &[9, 1]),
    (47, 1, &[2, 1]),
    (53, 1, &[2, 1]),
    (59, 1, &[3, 1]),
    (61, 1, &[2, 1]),
    (67, 1, &[4, 1]),
    (71, 1, &[2, 1]),
    (73, 1, &[5, 1]),
    (79, 1, &[2, 1]),
    (83, 1, &[3, 1]),
    (89, 1, &[3, 1]),
    (97, 1, &[5, 1]),
    (101, 1, &[2, 1]),
    (103, 1, &[2, 1]),
    (107, 1, &[3, 1]),
    (109, 1, &[6, 1]),
    (113, 1, &[3, 1]),
    (127, 1, &[9, 1]),
    (131, 1, &[3, 1]),
    (137, 1, &[3, 1]),
    (139, 1, &[4, 1]),
    (149, 1, &[2, 1]),
    (151, 1, &[5, 1]),
    (157, 1, &[5, 1]),
    (163, 1, &[4, 1]),
    (167, 1, &[2, 1]),
    (173, 1, &[2, 1]),
    (179, 1, &[3, 1]),
    (181, 1, &[2, 1]),
    (191, 1, &[2, 1]),
    (193, 1, &[5, 1]),
    (197, 1, &[2, 1]),
    (199, 1, &[2, 1]),
    (211, 1, &[4, 1]),
    (223, 1, &[9, 1]),
    (227, 1, &[3, 1]),
    (229, 1, &[6, 1]),
    (233, 1, &[3, 1]),
    (239, 1, &[2, 1]),
    (241, 1, &[7, 1]),
    (251, 1, &[3, 1]),
    (257, 1, &[3, 1]),
    (263, 1, &[2, 1]),
    (269, 1, &[2, 1]),
    (271, 1, &[2, 1]),
    (277, 1, &[5, 1]),
    (281, 1, &[3, 1]),
    (283, 1, &[6, 1]),
    (293, 1, &[2, 1]),
    (307, 1, &[7, 1]),
    (311, 1, &[2, 1]),
    (313, 1, &[10, 1]),
    (317, 1, &[2, 1]),
    (331, 1, &[5, 1]),
    (337, 1, &[10, 1]),
    (347, 1, &[3, 1]),
    (349, 1, &[2, 1]),
    (353, 1, &[3, 1]),
    (359, 1, &[2, 1]),
    (367, 1, &[2, 1]),
    (373, 1, &[2, 1]),
    (379, 1, &[4, 1]),
    (383, 1, &[2, 1]),
    (389, 1, &[2, 1]),
    (397, 1, &[5, 1]),
    (401, 1, &[3, 1]),
    (409, 1, &[21, 1]),
    (419, 1, &[3, 1]),
    (421, 1, &[2, 1]),
    (431, 1, &[5, 1]),
    (433, 1, &[5, 1]),
    (439, 1, &[5, 1]),
    (443, 1, &[3, 1]),
    (449, 1, &[3, 1]),
    (457, 1, &[13, 1]),
    (461, 1, &[2, 1]),
    (463, 1, &[2, 1]),
    (467, 1, &[3, 1]),
    (479, 1, &[2, 1]),
    (487, 1, &[2, 1]),
    (491, 1, &[4, 1]),
    (499, 1, &[5, 1]),
    (503, 1, &[2, 1]),
    (509, 1, &[2, 1]),
];
