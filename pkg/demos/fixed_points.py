"""Build a QNRNP g with a QNRNP fixed point g^x = x (mod p), then confirm it
by enumerating every fixed point of t -> g^t."""

from qnrnp import NoWitness, construct_fixed_point, search_fixed_points

for p in (5, 7, 13, 37, 101, 1009):
    try:
        r = construct_fixed_point(p)
    except NoWitness as exc:
        print(f"p={p:>5}  {exc}")
        continue
    print(f"p={p:>5}  x={r.x} y={r.y} g={r.g} verified={r.verified}  "
          f"all fixed points of g: {search_fixed_points(p, r.g)}")
