"""Twisted Jacquet modules of parabolically induced representations of Sp4(F_q).

Library layout:
    ff      -- arithmetic in F_q and F_{q^2}, multiplicative/additive characters
    matgrp  -- matrices over F_q, Sp4 and its named subgroups, embeddings, Levi parts
    cosets  -- isotropic-subspace coset models, orbits, double cosets, decomposability
    chars   -- conjugacy classes and irreducible character tables
    jacquet -- induced characters, twisted Jacquet projectors, theorem verification
    cli     -- command line front end
"""

__version__ = "0.1.0"
