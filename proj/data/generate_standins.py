#!/usr/bin/env python3
"""Generate the stand-in KRb and RbCs datasets shipped in data/.

These are MODEL curves (Morse potentials, smooth Gaussian-shaped dipole
functions) with roughly realistic spectroscopic constants. They are not the
ab initio curves of any published calculation and exist so that every CLI
command and acceptance check has input data to run on.
"""
import json
import math
import os

HARTREE_CM1 = 219474.6313632
AMU_ME = 1822.888486209

MASSES = {"K40": 39.96399848, "Rb87": 86.909180531, "Cs133": 132.905451961}


def reduced_mass(a, b):
    return MASSES[a] * MASSES[b] / (MASSES[a] + MASSES[b])


def morse_range(omega_e, depth, mu_amu):
    """a [1/bohr] from harmonic frequency omega_e [cm^-1] and depth D_e [cm^-1]."""
    w = omega_e / HARTREE_CM1
    d = depth / HARTREE_CM1
    return w * math.sqrt(mu_amu * AMU_ME / (2.0 * d))


def grid():
    return [4.0 + 0.05 * i for i in range(721)]  # 4 .. 40 bohr


def write_curve(path, comment, unit, rs, vs):
    with open(path, "w") as f:
        f.write(f"# {comment}\n")
        f.write("# stand-in model curve, not ab initio data\n")
        f.write(f"units: bohr {unit}\n")
        for r, v in zip(rs, vs):
            f.write(f"{r:.4f} {v:.10e}\n")


def build(name, atoms, ground, permanent, excited, outdir):
    mu = reduced_mass(*atoms)
    os.makedirs(outdir, exist_ok=True)
    states = []
    rs = grid()
    # Ground state: minimum at zero energy.
    for label, omega, t_e, depth, r_e, omega_e in [ground] + [e[:6] for e in excited]:
        a = morse_range(omega_e, depth, mu)
        vs = [t_e + depth * (1.0 - math.exp(-a * (r - r_e))) ** 2 for r in rs]
        write_curve(os.path.join(outdir, f"pot__{label}.dat"),
                    f"{name} {label}: Morse T_e={t_e} D_e={depth} r_e={r_e} omega_e={omega_e}",
                    "cm-1", rs, vs)
        states.append({"label": label, "omega": omega, "parity_tag": "+" if omega == 0 else None,
                       "asymptote_energy": t_e + depth})
    glabel = ground[0]
    d0, r_d, width = permanent
    write_curve(os.path.join(outdir, f"dip__{glabel}__{glabel}.dat"),
                f"{name} permanent dipole of {glabel}", "debye", rs,
                [d0 * math.exp(-width * (r - r_d) ** 2) for r in rs])
    for label, _, _, _, _, _, d_t, r_d, width in excited:
        write_curve(os.path.join(outdir, f"dip__{glabel}__{label}.dat"),
                    f"{name} transition dipole {glabel}-{label}", "debye", rs,
                    [d_t * math.exp(-width * (r - r_d) ** 2) for r in rs])
    for s in states:
        if s["parity_tag"] is None:
            del s["parity_tag"]
    meta = {
        "name": name,
        "description": "Stand-in model dataset (Morse potentials, model dipole functions). "
                       "Not the ab initio curves of any published calculation.",
        "reduced_mass": round(mu, 8),
        "ground_label": glabel,
        "default_gamma": 6.0,
        "states": states,
    }
    with open(os.path.join(outdir, "molecule.json"), "w") as f:
        json.dump(meta, f, indent=2)
        f.write("\n")


here = os.path.dirname(os.path.abspath(__file__))

# (label, omega, T_e, D_e, r_e, omega_e[, d_transition, r_dipole, width])
build("RbCs-standin", ("Rb87", "Cs133"),
      ("X0p", 0, 0.0, 3836.0, 8.27, 49.4),
      (1.27, 8.27, 0.02),
      [("c0p", 0, 9300.0, 4000.0, 8.9, 40.0, 1.0e-5, 8.9, 0.01),
       ("A0p", 0, 9900.0, 5600.0, 9.2, 42.0, 3.5, 9.0, 0.01),
       ("B1", 1, 12600.0, 3300.0, 9.0, 34.0, 2.0, 9.0, 0.01),
       ("D0p", 0, 15800.0, 2500.0, 9.6, 30.0, 1.5, 9.4, 0.01)],
      os.path.join(here, "rbcs_standin"))

build("KRb-standin", ("K40", "Rb87"),
      ("X0p", 0, 0.0, 4217.0, 7.69, 75.5),
      (0.76, 7.69, 0.02),
      [("c0p", 0, 11400.0, 4200.0, 8.0, 55.0, 1.0e-5, 8.0, 0.01),
       ("A0p", 0, 10900.0, 5000.0, 8.3, 60.0, 3.0, 8.2, 0.01),
       ("B1", 1, 13500.0, 3000.0, 8.2, 50.0, 2.0, 8.2, 0.01),
       ("D0p", 0, 16500.0, 2500.0, 8.8, 45.0, 1.5, 8.6, 0.01)],
      os.path.join(here, "krb_standin"))
