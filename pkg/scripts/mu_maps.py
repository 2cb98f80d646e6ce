"""Tabulate which of the listed rational maps permute mu_{q+1}, m = 1..9."""

from permtri.gf2m import make_tower
from permtri.permcheck import bijects_mu, mu_map_predicted, mu_maps


def main():
    print("m  group  predicted  observed")
    for m in range(1, 10):
        t = make_tower(m)
        for group in ("i", "ii", "iii"):
            if group == "iii" and m % 2 == 0:
                continue
            obs = all(bijects_mu(l, t) for l in mu_maps(group, t))
            print(f"{m}  {group:<5}  {mu_map_predicted(group, m)!s:<9}  {obs}")


if __name__ == "__main__":
    main()
