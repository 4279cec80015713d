"""eigenfib list-spaces command

:copyright: Copyright 2026 eigenfib developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
from eigenfib.spaces import (FAMILIES, SpaceId, build_descriptor,
                             quotient_dimension)

HEADER = ('space', 'n', 'ambient', 'dim g', 'dim k', 'dim p', 'quotient',
          'fibre')


def space_rows(max_n):
    rows = []
    for name, fam in sorted(FAMILIES.items(), key=lambda kv: kv[1].tag):
        for n in range(fam.min_n, max(max_n, fam.min_n) + 1):
            space = SpaceId(name, n)
            desc = build_descriptor(space)
            dim_p = len(desc.basis_p)
            rows.append((
                space.tag, n, space.ambient_size, desc.dim,
                len(desc.basis_k), dim_p, quotient_dimension(space),
                dim_p - 2,
            ))
    return rows


def list_spaces(config):
    max_n = int(config.n) if config.n is not None else 3
    fmt = '{:<10} {:>3} {:>8} {:>6} {:>6} {:>6} {:>9} {:>6}'
    print(fmt.format(*HEADER))
    for row in space_rows(max_n):
        print(fmt.format(*row))
    return 0
