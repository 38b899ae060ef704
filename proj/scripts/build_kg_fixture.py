#!/usr/bin/env python3
"""Build data/kg/pw_kg.json from the curated tables in kg_params.py.

The output is deterministic; rerun after editing the tables:
    python3 scripts/build_kg_fixture.py data/kg/pw_kg.json
"""
import json
import sys

import kg_params as P

REQUIRED = {"calculation", "ibrav", "nat", "ntyp", "ecutwfc", "ATOMIC_SPECIES", "ATOMIC_POSITIONS", "K_POINTS"}

# category -> [(condition key, [node names])]
CONDITIONS = {
    "calculation_type": [
        ("SCF calculation", ["calculation", "conv_thr", "electron_maxstep", "mixing_beta"]),
        ("Non-self-consistent calculation", ["calculation", "nbnd", "nosym", "diago_full_acc"]),
        ("Band structure calculation", ["calculation", "nbnd", "K_POINTS", "diago_full_acc"]),
        ("Structural relaxation", ["calculation", "ion_dynamics", "forc_conv_thr", "etot_conv_thr", "nstep", "tprnfor"]),
        ("Variable-cell relaxation", ["calculation", "cell_dynamics", "press", "press_conv_thr", "cell_dofree", "tstress", "ecutrho"]),
        ("Molecular dynamics", ["calculation", "dt", "nstep", "ion_temperature", "tempw", "ion_dynamics"]),
        ("Variable-cell molecular dynamics", ["calculation", "cell_dynamics", "wmass", "dt", "press"]),
        ("Geometry optimization", ["calculation", "ion_dynamics", "bfgs_ndim", "trust_radius_max", "forc_conv_thr", "upscale"]),
        ("Restart from previous run", ["restart_mode", "startingpot", "startingwfc", "ion_positions", "outdir", "prefix"]),
        ("Total energy calculation", ["calculation", "etot_conv_thr", "conv_thr"]),
        ("Force calculation", ["tprnfor"]),
        ("Stress calculation", ["tstress"]),
        ("Phonon preparation", ["conv_thr", "tprnfor", "outdir"]),
        ("Equation of state", ["tstress", "celldm", "A"]),
        ("High verbosity output", ["verbosity", "iprint"]),
        ("Wall-time limited run", ["max_seconds"]),
        ("Density of states preparation", ["occupations", "nbnd", "K_POINTS"]),
        ("Charge density output", ["disk_io", "outdir", "prefix"]),
        ("Fermi surface preparation", ["nosym", "occupations", "K_POINTS"]),
        ("Constrained relaxation", ["CONSTRAINTS", "ATOMIC_POSITIONS", "ion_dynamics"]),
    ],
    "functional_and_method": [
        ("LDA functional", ["input_dft"]),
        ("GGA functional", ["input_dft"]),
        ("PBE functional", ["input_dft"]),
        ("PBEsol functional", ["input_dft"]),
        ("Meta-GGA functional", ["input_dft", "ecutrho"]),
        ("Hybrid functional", ["input_dft", "exx_fraction", "ecutfock", "nqx1", "nqx2", "nqx3", "ace", "exxdiv_treatment"]),
        ("B3LYP functional", ["input_dft", "exx_fraction", "nqx1", "nqx2", "nqx3"]),
        ("PBE0 functional", ["input_dft", "exx_fraction", "ecutfock"]),
        ("HSE functional", ["input_dft", "screening_parameter", "exx_fraction"]),
        ("Exact exchange", ["exx_maxstep", "adaptive_thr", "x_gamma_extrapolation", "ecutvcut", "localization_thr"]),
        ("DFT+U", ["HUBBARD", "Hubbard_occ", "mixing_fixed_ns", "starting_ns_eigenvalue"]),
        ("DFT+U+V", ["HUBBARD", "Hubbard_alpha", "Hubbard_beta"]),
        ("Grimme-D2 dispersion", ["vdw_corr", "london_s6", "london_c6", "london_rvdw", "london_rcut"]),
        ("Grimme-D3 dispersion", ["vdw_corr", "dftd3_version", "dftd3_threebody"]),
        ("Tkatchenko-Scheffler dispersion", ["vdw_corr", "ts_vdw_econv_thr", "ts_vdw_isolated"]),
        ("XDM dispersion", ["vdw_corr", "xdm_a1", "xdm_a2"]),
        ("van der Waals density functional", ["input_dft", "ensemble_energies"]),
        ("Self-interaction correction", ["sic_gamma", "pol_type", "sic_energy"]),
        ("Scissor correction", ["sci_vb", "sci_cb"]),
        ("Real-space augmentation", ["tqr", "real_space"]),
        ("DMFT embedding", ["dmft", "dmft_prefix"]),
        ("Solvation with 3D-RISM", ["trism", "nsolv", "closure", "tempv", "ecutsolv", "SOLVENTS"]),
    ],
    "cell_and_material_properties": [
        ("Bravais lattice specification", ["ibrav", "celldm", "A", "B", "C"]),
        ("Free lattice (ibrav=0)", ["ibrav", "CELL_PARAMETERS"]),
        ("Cubic lattice", ["ibrav", "celldm", "A"]),
        ("Hexagonal lattice", ["ibrav", "celldm", "A", "C"]),
        ("Monoclinic lattice", ["ibrav", "cosAB", "cosAC", "uniqueb"]),
        ("Triclinic lattice", ["ibrav", "cosAB", "cosAC", "cosBC"]),
        ("Space group input", ["space_group", "origin_choice", "rhombohedral", "uniqueb"]),
        ("Wyckoff positions", ["space_group", "ATOMIC_POSITIONS"]),
        ("Bulk crystal", ["ibrav", "nat", "ntyp", "K_POINTS"]),
        ("Layered material", ["vdw_corr", "cell_dofree"]),
        ("Two-dimensional material", ["assume_isolated", "cell_dofree", "K_POINTS", "vdw_corr"]),
        ("Surface slab", ["mixing_mode", "dipfield", "edir", "assume_isolated"]),
        ("Charged system", ["tot_charge", "assume_isolated", "gate"]),
        ("Semiconductors", ["occupations", "nbnd"]),
        ("Insulators", ["occupations"]),
        ("Transition-metal compounds", ["HUBBARD", "nspin", "starting_magnetization", "mixing_beta"]),
        ("Oxides", ["HUBBARD", "ecutwfc", "ecutrho"]),
        ("Pressure applied", ["press", "cell_dynamics", "press_conv_thr"]),
        ("Fixed cell shape", ["cell_dofree"]),
        ("Constrained cell degrees of freedom", ["cell_dofree", "cell_factor"]),
        ("Large supercell", ["K_POINTS", "diagonalization", "mixing_mode", "real_space"]),
        ("Atomic species definition", ["ATOMIC_SPECIES", "ntyp"]),
    ],
    "pseudopotential": [
        ("Norm-conserving pseudopotentials", ["ecutwfc", "ecutrho", "pseudo_dir"]),
        ("Ultrasoft pseudopotentials", ["ecutwfc", "ecutrho", "tqr"]),
        ("PAW pseudopotentials", ["ecutwfc", "ecutrho", "tqr"]),
        ("Mixed pseudopotential types", ["ecutrho", "pseudo_dir"]),
        ("Custom pseudopotential directory", ["pseudo_dir"]),
        ("Semicore states", ["ecutwfc", "nbnd"]),
        ("High cutoff requirement", ["ecutwfc", "ecutrho"]),
        ("Charge-density cutoff", ["ecutrho", "nr1", "nr2", "nr3"]),
        ("Augmentation charges", ["tqr", "ecutrho"]),
        ("Fully relativistic pseudopotentials", ["lspinorb", "noncolin"]),
        ("Scalar-relativistic pseudopotentials", ["ATOMIC_SPECIES"]),
        ("Nonlinear core correction", ["ecutrho"]),
        ("Pseudopotential mass specification", ["ATOMIC_SPECIES"]),
        ("Plane-wave convergence testing", ["ecutwfc", "ecutrho", "etot_conv_thr"]),
    ],
    "magnetism_and_spin": [
        ("Spin-polarized calculation", ["nspin", "starting_magnetization", "tot_magnetization"]),
        ("Collinear magnetism", ["nspin", "starting_magnetization"]),
        ("Noncollinear magnetism", ["noncolin", "angle1", "angle2", "starting_magnetization"]),
        ("Spin-orbit coupling", ["lspinorb", "noncolin", "starting_spin_angle"]),
        ("Ferromagnetic order", ["nspin", "starting_magnetization"]),
        ("Antiferromagnetic order", ["nspin", "starting_magnetization", "ATOMIC_SPECIES"]),
        ("Fixed total magnetization", ["tot_magnetization", "nspin"]),
        ("Constrained magnetization", ["constrained_magnetization", "fixed_magnetization", "lambda"]),
        ("Starting magnetization", ["starting_magnetization"]),
        ("Magnetic anisotropy", ["lforcet", "lspinorb", "angle1", "angle2"]),
        ("Paramagnetic system", ["nspin"]),
        ("Magnetic transition metals", ["nspin", "starting_magnetization", "mixing_beta", "occupations"]),
        ("Two-chemical-potential spin", ["twochem", "nelec_cond", "nbnd_cond", "degauss_cond"]),
        ("Spin angle constraints", ["angle1", "angle2", "constrained_magnetization"]),
        ("Lagrange multiplier constraint", ["lambda"]),
        ("Unpolarized calculation", ["nspin"]),
        ("Local moment reporting", ["report"]),
        ("Time-reversal symmetry breaking", ["no_t_rev", "noinv"]),
    ],
    "isolated_systems": [
        ("Isolated molecule", ["assume_isolated", "K_POINTS", "nosym"]),
        ("Martyna-Tuckerman correction", ["assume_isolated"]),
        ("Makov-Payne correction", ["assume_isolated"]),
        ("ESM boundary conditions", ["esm_bc", "esm_w", "esm_efield", "esm_nfit"]),
        ("Gamma-point only", ["K_POINTS"]),
        ("Vacuum region", ["assume_isolated", "mixing_mode"]),
        ("Dipole correction", ["dipfield", "tefield", "edir", "emaxpos", "eopreg"]),
        ("Cluster calculation", ["assume_isolated", "remove_rigid_rot"]),
        ("Charged isolated system", ["tot_charge", "assume_isolated"]),
        ("Assumed isolated 2D", ["assume_isolated"]),
        ("Grand canonical SCF", ["lgcscf", "gcscf_mu", "gcscf_conv_thr", "gcscf_beta"]),
        ("Gate field", ["gate", "zgate", "relaxz", "block", "block_1", "block_2", "block_height"]),
        ("Constant bias potential", ["lfcp", "fcp_mu", "fcp_dynamics", "fcp_conv_thr", "freeze_all_atoms"]),
        ("Molecular adsorption", ["vdw_corr", "dipfield"]),
    ],
    "kpoint_settings": [
        ("Automatic k-point mesh", ["K_POINTS"]),
        ("Shifted k-point mesh", ["K_POINTS"]),
        ("Gamma-centered mesh", ["K_POINTS"]),
        ("Explicit k-point list", ["K_POINTS"]),
        ("Band path", ["K_POINTS", "calculation"]),
        ("Crystal coordinates k-points", ["K_POINTS"]),
        ("Tpiba k-points", ["K_POINTS"]),
        ("Dense k-point sampling", ["K_POINTS"]),
        ("Coarse k-point sampling", ["K_POINTS"]),
        ("Additional k-points", ["ADDITIONAL_K_POINTS"]),
        ("Symmetry-reduced k-points", ["nosym", "nosym_evc", "use_all_frac", "force_symmorphic"]),
        ("No symmetry", ["nosym", "nosym_evc"]),
        ("Time-reversal symmetric k-points", ["noinv"]),
        ("Berry phase strings", ["gdir", "nppstr", "lberry"]),
        ("Exact-exchange q-mesh", ["nqx1", "nqx2", "nqx3"]),
        ("k-point parallelization", []),
    ],
    "electric_field": [
        ("Sawtooth electric field", ["tefield", "edir", "emaxpos", "eopreg", "eamp"]),
        ("Finite electric field", ["lelfield", "efield", "efield_cart", "nberrycyc"]),
        ("Berry phase calculation", ["lberry", "gdir", "nppstr"]),
        ("Dipole field", ["dipfield", "tefield"]),
        ("Homogeneous field", ["lelfield", "efield_cart"]),
        ("Polarization calculation", ["lberry", "lelfield", "efield_phase"]),
        ("Field direction", ["edir", "gdir"]),
        ("Field amplitude", ["eamp", "efield"]),
        ("Gate charge", ["gate", "tot_charge", "zgate"]),
        ("Orbital magnetization", ["lorbm"]),
        ("Field cycles", ["nberrycyc"]),
        ("External ionic force field", ["nextffield", "ATOMIC_FORCES"]),
    ],
    "occupation_types": [
        ("Metallic systems", ["occupations", "smearing", "degauss", "nbnd", "mixing_beta"]),
        ("Smearing", ["occupations", "smearing", "degauss"]),
        ("Gaussian smearing", ["smearing", "degauss"]),
        ("Methfessel-Paxton smearing", ["smearing", "degauss"]),
        ("Marzari-Vanderbilt smearing", ["smearing", "degauss"]),
        ("Fermi-Dirac smearing", ["smearing", "degauss"]),
        ("Cold smearing", ["smearing", "degauss"]),
        ("Fixed occupations", ["occupations"]),
        ("Tetrahedron method", ["occupations", "K_POINTS"]),
        ("Optimized tetrahedra", ["occupations"]),
        ("Linear tetrahedra", ["occupations"]),
        ("User-defined occupations", ["occupations", "OCCUPATIONS"]),
        ("Semiconductor occupations", ["occupations", "nbnd"]),
        ("Partial occupations", ["occupations", "OCCUPATIONS", "one_atom_occupations"]),
        ("Empty bands", ["nbnd", "diago_full_acc"]),
        ("Excited-state occupations", ["OCCUPATIONS", "twochem"]),
        ("Two chemical potentials", ["twochem", "nelec_cond", "degauss_cond"]),
        ("Conduction band occupations", ["nbnd_cond", "nelec_cond"]),
        ("Metal smearing width", ["degauss"]),
        ("Number of bands", ["nbnd"]),
        ("One-atom occupations", ["one_atom_occupations", "starting_spin_angle"]),
        ("Occupation mixing", ["mixing_beta", "mixing_ndim", "mixing_mode"]),
        ("Insulator occupations", ["occupations"]),
        ("Hubbard occupations", ["Hubbard_occ", "starting_ns_eigenvalue"]),
    ],
}

# Dependency edges between parameters (undirected).
EDGES = [
    ("calculation", "ion_dynamics"), ("calculation", "cell_dynamics"), ("calculation", "nstep"),
    ("calculation", "tstress"), ("calculation", "tprnfor"), ("calculation", "dt"),
    ("calculation", "nbnd"), ("calculation", "K_POINTS"), ("calculation", "restart_mode"),
    ("calculation", "forc_conv_thr"), ("calculation", "etot_conv_thr"), ("calculation", "press"),
    ("restart_mode", "startingpot"), ("restart_mode", "startingwfc"), ("restart_mode", "outdir"),
    ("outdir", "prefix"), ("outdir", "wfcdir"), ("outdir", "disk_io"), ("prefix", "pseudo_dir"),
    ("verbosity", "iprint"), ("wf_collect", "disk_io"), ("lkpoint_dir", "outdir"), ("title", "prefix"),
    ("max_seconds", "restart_mode"), ("nstep", "dt"), ("nstep", "etot_conv_thr"),
    ("etot_conv_thr", "forc_conv_thr"), ("forc_conv_thr", "upscale"), ("forc_conv_thr", "ion_dynamics"),
    ("tefield", "dipfield"), ("tefield", "edir"), ("tefield", "emaxpos"), ("tefield", "eopreg"), ("tefield", "eamp"),
    ("dipfield", "edir"), ("dipfield", "assume_isolated"),
    ("lelfield", "efield"), ("lelfield", "efield_cart"), ("lelfield", "nberrycyc"), ("lelfield", "efield_phase"),
    ("lelfield", "K_POINTS"), ("lberry", "gdir"), ("lberry", "nppstr"), ("lberry", "lelfield"), ("lorbm", "lberry"),
    ("gate", "zgate"), ("gate", "relaxz"), ("gate", "block"), ("gate", "tot_charge"), ("gate", "lgcscf"),
    ("twochem", "nbnd_cond"), ("twochem", "nelec_cond"), ("twochem", "degauss_cond"), ("twochem", "occupations"),
    ("lfcp", "fcp_mu"), ("lfcp", "fcp_dynamics"), ("lfcp", "assume_isolated"), ("lfcp", "esm_bc"),
    ("trism", "nsolv"), ("trism", "closure"), ("trism", "SOLVENTS"), ("trism", "assume_isolated"),
    ("ibrav", "celldm"), ("ibrav", "A"), ("ibrav", "CELL_PARAMETERS"), ("ibrav", "space_group"),
    ("celldm", "A"), ("A", "B"), ("A", "C"), ("A", "cosAB"), ("B", "cosAC"), ("C", "cosBC"),
    ("cosAB", "cosAC"), ("cosAC", "cosBC"),
    ("nat", "ATOMIC_POSITIONS"), ("nat", "ntyp"), ("ntyp", "ATOMIC_SPECIES"),
    ("nat", "ATOMIC_VELOCITIES"), ("nat", "ATOMIC_FORCES"), ("nat", "CONSTRAINTS"),
    ("nbnd", "occupations"), ("nbnd", "OCCUPATIONS"), ("nbnd", "nbnd_cond"), ("nbnd", "diago_full_acc"),
    ("tot_charge", "starting_charge"), ("tot_charge", "assume_isolated"), ("tot_charge", "nbnd"),
    ("tot_magnetization", "nspin"), ("tot_magnetization", "starting_magnetization"), ("tot_magnetization", "occupations"),
    ("starting_magnetization", "nspin"), ("starting_magnetization", "noncolin"), ("starting_magnetization", "angle1"),
    ("starting_magnetization", "ATOMIC_SPECIES"), ("starting_magnetization", "mixing_beta"),
    ("ecutwfc", "ecutrho"), ("ecutwfc", "ecutfock"), ("ecutwfc", "ATOMIC_SPECIES"), ("ecutrho", "ecutfock"),
    ("ecutrho", "nr1"), ("ecutrho", "tqr"), ("ecutrho", "ATOMIC_SPECIES"), ("ecutwfc", "nr1s"),
    ("nr1", "nr2"), ("nr2", "nr3"), ("nr1s", "nr2s"), ("nr2s", "nr3s"), ("nr1", "nr1s"),
    ("nosym", "nosym_evc"), ("nosym", "noinv"), ("nosym", "K_POINTS"), ("nosym", "force_symmorphic"),
    ("noinv", "no_t_rev"), ("force_symmorphic", "use_all_frac"), ("use_all_frac", "nr1"), ("no_t_rev", "noncolin"),
    ("occupations", "smearing"), ("occupations", "degauss"), ("occupations", "OCCUPATIONS"),
    ("occupations", "one_atom_occupations"), ("occupations", "K_POINTS"), ("smearing", "degauss"),
    ("degauss", "degauss_cond"), ("one_atom_occupations", "starting_spin_angle"), ("nelec_cond", "degauss_cond"),
    ("nelec_cond", "nbnd_cond"),
    ("nspin", "noncolin"), ("nspin", "constrained_magnetization"), ("nspin", "report"),
    ("sic_gamma", "pol_type"), ("sic_gamma", "sic_energy"), ("sic_gamma", "nspin"), ("sci_vb", "sci_cb"),
    ("noncolin", "lspinorb"), ("noncolin", "angle1"), ("noncolin", "angle2"), ("noncolin", "starting_spin_angle"),
    ("noncolin", "lforcet"), ("angle1", "angle2"), ("lspinorb", "lforcet"), ("lspinorb", "starting_spin_angle"),
    ("ecfixed", "qcutz"), ("qcutz", "q2sigma"), ("ecfixed", "cell_dynamics"),
    ("input_dft", "exx_fraction"), ("input_dft", "screening_parameter"), ("input_dft", "ace"),
    ("input_dft", "vdw_corr"), ("input_dft", "ensemble_energies"), ("input_dft", "ecutfock"),
    ("exx_fraction", "screening_parameter"), ("exx_fraction", "exxdiv_treatment"), ("exx_fraction", "nqx1"),
    ("ace", "localization_thr"), ("exxdiv_treatment", "x_gamma_extrapolation"), ("exxdiv_treatment", "ecutvcut"),
    ("nqx1", "nqx2"), ("nqx2", "nqx3"), ("nqx1", "K_POINTS"),
    ("exx_maxstep", "input_dft"), ("adaptive_thr", "conv_thr_init"), ("adaptive_thr", "conv_thr_multi"),
    ("adaptive_thr", "exx_maxstep"),
    ("HUBBARD", "Hubbard_occ"), ("HUBBARD", "Hubbard_alpha"), ("HUBBARD", "Hubbard_beta"),
    ("HUBBARD", "starting_ns_eigenvalue"), ("HUBBARD", "mixing_fixed_ns"), ("HUBBARD", "ATOMIC_SPECIES"),
    ("Hubbard_alpha", "Hubbard_beta"), ("dmft", "dmft_prefix"), ("dmft", "HUBBARD"),
    ("edir", "emaxpos"), ("emaxpos", "eopreg"), ("eopreg", "eamp"),
    ("constrained_magnetization", "fixed_magnetization"), ("constrained_magnetization", "lambda"),
    ("constrained_magnetization", "angle1"), ("constrained_magnetization", "report"),
    ("assume_isolated", "esm_bc"), ("assume_isolated", "K_POINTS"), ("assume_isolated", "remove_rigid_rot"),
    ("esm_bc", "esm_w"), ("esm_bc", "esm_efield"), ("esm_bc", "esm_nfit"), ("esm_bc", "lgcscf"),
    ("lgcscf", "gcscf_mu"), ("lgcscf", "gcscf_conv_thr"), ("lgcscf", "gcscf_beta"),
    ("vdw_corr", "london_s6"), ("vdw_corr", "london_rcut"), ("vdw_corr", "dftd3_version"),
    ("vdw_corr", "ts_vdw_econv_thr"), ("vdw_corr", "xdm_a1"), ("vdw_corr", "london"), ("vdw_corr", "xdm"),
    ("london", "london_s6"), ("london_s6", "london_c6"), ("london_c6", "london_rvdw"), ("london_rvdw", "london_rcut"),
    ("dftd3_version", "dftd3_threebody"), ("ts_vdw_econv_thr", "ts_vdw_isolated"), ("xdm", "xdm_a1"), ("xdm_a1", "xdm_a2"),
    ("space_group", "uniqueb"), ("space_group", "origin_choice"), ("space_group", "rhombohedral"),
    ("space_group", "ATOMIC_POSITIONS"),
    ("zgate", "relaxz"), ("block", "block_1"), ("block_1", "block_2"), ("block_2", "block_height"),
    ("nextffield", "ATOMIC_FORCES"),
    ("electron_maxstep", "conv_thr"), ("electron_maxstep", "scf_must_converge"), ("conv_thr", "conv_thr_init"),
    ("conv_thr", "mixing_beta"), ("conv_thr", "upscale"), ("conv_thr", "diago_thr_init"),
    ("mixing_mode", "mixing_beta"), ("mixing_beta", "mixing_ndim"), ("mixing_ndim", "mixing_fixed_ns"),
    ("diagonalization", "diago_thr_init"), ("diagonalization", "diago_cg_maxiter"), ("diagonalization", "diago_ppcg_maxiter"),
    ("diagonalization", "diago_david_ndim"), ("diagonalization", "diago_rmm_ndim"), ("diagonalization", "diago_full_acc"),
    ("diago_rmm_ndim", "diago_rmm_conv"), ("diago_rmm_conv", "diago_gs_nblock"),
    ("efield", "efield_cart"), ("efield_cart", "efield_phase"),
    ("startingpot", "startingwfc"), ("tqr", "real_space"),
    ("ion_positions", "ATOMIC_POSITIONS"), ("ion_velocities", "ATOMIC_VELOCITIES"), ("ion_velocities", "ion_dynamics"),
    ("ion_dynamics", "pot_extrapolation"), ("ion_dynamics", "wfc_extrapolation"), ("ion_dynamics", "ion_temperature"),
    ("ion_dynamics", "bfgs_ndim"), ("ion_dynamics", "fire_alpha_init"), ("ion_dynamics", "cell_dynamics"),
    ("ion_dynamics", "CONSTRAINTS"), ("ion_dynamics", "dt"),
    ("pot_extrapolation", "wfc_extrapolation"), ("remove_rigid_rot", "ion_dynamics"),
    ("ion_temperature", "tempw"), ("ion_temperature", "tolp"), ("ion_temperature", "delta_t"), ("ion_temperature", "nraise"),
    ("tempw", "tolp"), ("delta_t", "nraise"), ("refold_pos", "ATOMIC_POSITIONS"),
    ("upscale", "bfgs_ndim"), ("bfgs_ndim", "trust_radius_max"), ("trust_radius_max", "trust_radius_min"),
    ("trust_radius_min", "trust_radius_ini"), ("trust_radius_ini", "w_1"), ("w_1", "w_2"),
    ("fire_alpha_init", "fire_falpha"), ("fire_falpha", "fire_nmin"), ("fire_nmin", "fire_f_inc"),
    ("fire_f_inc", "fire_f_dec"), ("fire_f_dec", "fire_dtmax"), ("fire_dtmax", "dt"),
    ("cell_dynamics", "press"), ("cell_dynamics", "wmass"), ("cell_dynamics", "cell_factor"),
    ("cell_dynamics", "press_conv_thr"), ("cell_dynamics", "cell_dofree"), ("cell_dynamics", "CELL_PARAMETERS"),
    ("press", "press_conv_thr"), ("cell_dofree", "CELL_PARAMETERS"),
    ("fcp_dynamics", "fcp_conv_thr"), ("fcp_dynamics", "fcp_ndiis"), ("fcp_dynamics", "fcp_mass"),
    ("fcp_dynamics", "fcp_velocity"), ("fcp_dynamics", "fcp_temperature"), ("fcp_temperature", "fcp_tempw"),
    ("fcp_tempw", "fcp_tolp"), ("fcp_tolp", "fcp_delta_t"), ("fcp_delta_t", "fcp_nraise"), ("fcp_mu", "fcp_conv_thr"),
    ("freeze_all_atoms", "fcp_dynamics"),
    ("nsolv", "SOLVENTS"), ("closure", "tempv"), ("tempv", "ecutsolv"), ("ecutsolv", "ecutrho"),
    ("solute_lj", "solute_epsilon"), ("solute_epsilon", "solute_sigma"), ("solute_lj", "ATOMIC_SPECIES"),
    ("starting1d", "starting3d"), ("smear1d", "smear3d"), ("rism1d_maxstep", "rism1d_conv_thr"),
    ("rism3d_maxstep", "rism3d_conv_thr"), ("mdiis1d_size", "mdiis1d_step"), ("mdiis3d_size", "mdiis3d_step"),
    ("rism1d_conv_thr", "mdiis1d_size"), ("rism3d_conv_thr", "mdiis3d_size"),
    ("rism1d_bond_width", "rism1d_dielectric"), ("laue_nfit", "laue_expand_right"),
    ("laue_expand_right", "laue_expand_left"), ("laue_nfit", "esm_nfit"),
    ("ATOMIC_SPECIES", "ATOMIC_POSITIONS"), ("ATOMIC_POSITIONS", "CELL_PARAMETERS"),
    ("K_POINTS", "ADDITIONAL_K_POINTS"), ("ADDITIONAL_K_POINTS", "nqx1"), ("CONSTRAINTS", "ATOMIC_POSITIONS"),
    ("ATOMIC_VELOCITIES", "ATOMIC_POSITIONS"), ("ATOMIC_FORCES", "ATOMIC_POSITIONS"),
    ("ecutwfc", "conv_thr"), ("degauss", "mixing_beta"),
    ("smearing", "nbnd"), ("nspin", "occupations"), ("nspin", "HUBBARD"), ("ecutwfc", "pseudo_dir"),
    ("input_dft", "pseudo_dir"), ("calculation", "ion_positions"), ("calculation", "cell_dofree"),
    ("K_POINTS", "nosym_evc"), ("mixing_mode", "assume_isolated"), ("verbosity", "report"),
    ("tstress", "press"), ("tprnfor", "forc_conv_thr"), ("diagonalization", "real_space"),
    ("startingwfc", "diago_thr_init"), ("scf_must_converge", "nstep"), ("tot_charge", "lgcscf"),
    ("starting_charge", "startingpot"),
]

MANIFEST_EDGES = 330


def main(out_path):
    tables = [("CONTROL", P.CONTROL), ("SYSTEM", P.SYSTEM), ("ELECTRONS", P.ELECTRONS), ("IONS", P.IONS),
              ("CELL", P.CELL), ("FCP", P.FCP), ("RISM", P.RISM)]
    nodes = {}
    order = []
    for section, rows in tables:
        for row in rows:
            name, dtype, default, desc = row[:4]
            rec = {"name": name, "kind": "namelist_parameter", "namelist": section, "description": desc, "data_type": dtype}
            if default is not None:
                rec["default_value"] = default
            if len(row) > 4:
                rec["allowed_values"] = row[4]
            rec["required"] = name in REQUIRED
            nodes[name] = rec
            order.append(name)
    for name, desc, _ in P.CARDS:
        nodes[name] = {"name": name, "kind": "card", "description": desc, "data_type": "COMPOSITE", "required": name in REQUIRED}
        order.append(name)

    adjacency = {n: set() for n in order}
    seen = set()
    for a, b in EDGES:
        assert a in nodes and b in nodes, (a, b)
        key = tuple(sorted((a, b)))
        assert key not in seen, key
        seen.add(key)
        adjacency[a].add(b)
    if len(seen) != MANIFEST_EDGES:
        sys.exit(f"edge count {len(seen)} != {MANIFEST_EDGES}")

    conditions = []
    cond_of = {n: [] for n in order}
    for category, entries in CONDITIONS.items():
        for key, members in entries:
            conditions.append({"key": key, "category": category})
            for m in members:
                assert m in nodes, (key, m)
                cond_of[m].append(key)
    keys = [c["key"] for c in conditions]
    assert len(keys) == len(set(keys))

    out_nodes = []
    for n in order:
        rec = dict(nodes[n])
        rec["connections"] = sorted(adjacency[n])
        rec["conditions"] = cond_of[n]
        out_nodes.append(rec)

    doc = {
        "manifest": {"node_count": len(out_nodes), "edge_count": len(seen), "condition_count": len(conditions),
                     "version": "pw.x-7.2-curated-1"},
        "nodes": out_nodes,
        "conditions": conditions,
    }
    with open(out_path, "w", encoding="utf-8") as f:
        json.dump(doc, f, indent=1, ensure_ascii=False)
        f.write("\n")
    print(f"nodes={len(out_nodes)} edges={len(seen)} conditions={len(conditions)}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/kg/pw_kg.json")
