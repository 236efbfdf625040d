from pathlib import Path
from invoke import task


@task
def figures(c, N=3):
    """Render the standard descriptions to SVG files in figures/."""
    builds = {
        "gamma_s3": "--genus0 --s 3",
        "gamma_s5": "--genus0 --s 5",
        "gamma_22": f"--m 2 --s 2 --N {N}",
        "gamma_23": f"--m 2 --s 3 --N {N}",
        "gamma_33": f"--m 3 --s 3 --N {N}",
    }

    layers = {
        "circles": "circles,intervals,labels",
        "domain": "domain,circles,box:1",
        "tiles": "tiles:2,circles",
    }

    Path("figures").mkdir(exist_ok=True)
    for name, flags in builds.items():
        print(f"Building {name} ... ", end="")
        c.run(f"schottky build {flags} -o figures/{name}.txt", echo=True)
        print("done")
        for suffix, spec in layers.items():
            c.run(
                f"schottky render --layers {spec} -o figures/{name}_{suffix}.svg figures/{name}.txt",
                echo=True,
            )


@task
def topology(c, N=6):
    """Tabulate the genus of the truncations of a few groups."""
    Path("figures").mkdir(exist_ok=True)
    for m, s in [(2, 2), (2, 3), (3, 3)]:
        c.run(f"schottky build --m {m} --s {s} --N 1 -o figures/gamma_{m}{s}_1.txt", echo=True)
        c.run(
            f"schottky topology --sweep {N} --json -o figures/topology_{m}{s}.json "
            f"figures/gamma_{m}{s}_1.txt",
            echo=True,
        )
