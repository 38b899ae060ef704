"""Writes the scripted model catalog (data/catalogs/base.json) and the scenario suite (data/scenarios/)."""
import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent
KINDS = ["scf", "nscf", "bands", "relax", "md", "vc-relax", "vc-md"]
FEATURES = ["named_material", "named_functional", "kpoint_specification", "spin_or_magnetism", "dimensionality",
            "convergence_criteria", "cell_or_space_group", "multiple_tasks", "units_given", "method_constraints"]
HIERARCHY = ["worker-small", "worker-large", "referee"]


def base_catalog():
    entries = [
        {"template": "parameter_evaluate", "when": {"parameter": "=calculation", "calculation": "=" + k},
         "response": {"value": k, "rationale": "requested calculation"}}
        for k in KINDS
    ]
    entries += [
        {"template": "parameter_evaluate", "response": {"value": None, "rationale": "not needed for this request"}},
        {"template": "condition_extract", "response": {"conditions": []}},
        {"template": "error_keywords", "response": {"keywords": []}},
        {"template": "protocol_generate", "echo_binding": "draft", "fence": True},
        {"template": "error_correct", "echo_binding": "protocol", "fence": True},
    ]
    return {
        "entries": entries,
        "parameter_values": {"ecutwfc": 45.0, "K_POINTS": "6 6 6 0 0 0"},
    }


def features(*present):
    unknown = set(present) - set(FEATURES)
    assert not unknown, unknown
    return {f: f in present for f in FEATURES}


def scenario(name, prompt, formula, dim, kind, keywords, conditions, feats, values=None, fails=0, extra=None,
             expect_status=None, fault_script=None):
    catalog = {
        "entries": [
            {"template": "interface_parse",
             "response": {"keywords": keywords, "material_formula": formula, "dimensionality": dim,
                          "calculation_kind": kind}},
            {"template": "condition_extract", "response": {"conditions": conditions}},
            {"template": "complexity_score", "response": features(*feats)},
        ] + (extra or []),
        "parameter_values": values or {},
    }
    budget = 3
    limit = budget * len(HIERARCHY)
    status = expect_status or ("success" if fails < limit else "failure")
    expect = {"status": status}
    if status == "success":
        expect.update({"total_attempts": fails, "model_index": fails // budget})
    elif fault_script is None:
        expect.update({"total_attempts": limit, "model_index": len(HIERARCHY) - 1})
    doc = {
        "name": name,
        "prompt": prompt,
        "hierarchy": HIERARCHY,
        "retries_per_model": budget,
        "fault_script": fault_script if fault_script is not None else ["fail"] * fails,
        "catalog": catalog,
        "expect": expect,
    }
    return doc


SI_OK = """&CONTROL
  calculation = 'scf'
/
&SYSTEM
  ibrav = 0
  nat = 2
  ntyp = 1
  ecutwfc = 40.0
/
&ELECTRONS
  conv_thr = 1e-08
/
ATOMIC_SPECIES
  Si 28.085 Si.pbe-n-kjpaw_psl.1.0.0.UPF
ATOMIC_POSITIONS crystal
  Si 0.0 0.0 0.0
  Si 0.25 0.25 0.25
K_POINTS automatic
  8 8 8 0 0 0
CELL_PARAMETERS angstrom
  0.0 2.7155 2.7155
  2.7155 0.0 2.7155
  2.7155 2.7155 0.0
"""


def scenarios():
    out = []
    add = out.append
    add(scenario(
        "pds2_b3lyp_relax",
        "Perform a geometry optimization for 2D PdS2 using the B3LYP hybrid functional with a 7x7x2 k-point mesh "
        "and Gaussian smearing.",
        "PdS2", "2D", "relax",
        ["geometry optimization", "B3LYP", "hybrid functional", "k-point mesh", "smearing", "input_dft",
         "exx_fraction", "ion_dynamics", "occupations", "degauss"],
        ["Structural relaxation", "Geometry optimization", "B3LYP functional", "Hybrid functional",
         "Two-dimensional material", "Smearing", "Gaussian smearing", "Automatic k-point mesh"],
        ["named_material", "named_functional", "kpoint_specification", "dimensionality", "method_constraints"],
        {"input_dft": "B3LYP", "exx_fraction": 0.2, "ion_dynamics": "bfgs", "occupations": "smearing",
         "smearing": "gaussian", "degauss": 0.01, "ecutwfc": 50.0, "ecutrho": 400.0, "K_POINTS": "7 7 2 0 0 0"}))
    add(scenario("si_scf", "Run an SCF calculation for bulk silicon.", "Si", "3D", "scf",
                 ["scf", "silicon"], ["SCF calculation", "Bulk crystal", "Semiconductors"],
                 ["named_material"]))
    add(scenario("cu_scf_smearing", "SCF of bulk copper with Marzari-Vanderbilt smearing of 0.02 Ry.",
                 "Cu", "3D", "scf", ["scf", "copper", "smearing", "occupations", "degauss"],
                 ["SCF calculation", "Metallic systems", "Marzari-Vanderbilt smearing", "Smearing"],
                 ["named_material", "units_given", "method_constraints"],
                 {"occupations": "smearing", "smearing": "mv", "degauss": 0.02}))
    add(scenario("graphene_bands", "Band structure of graphene along the high-symmetry path.", "C", "2D", "bands",
                 ["band structure", "graphene", "nbnd"], ["Band structure calculation", "Two-dimensional material"],
                 ["named_material", "dimensionality"], {"nbnd": 8, "K_POINTS": "12 12 1 0 0 0"}))
    add(scenario("mgo_scf", "Total energy of rock-salt MgO with PBE.", "MgO", "3D", "scf",
                 ["total energy", "PBE", "input_dft"], ["SCF calculation", "Total energy calculation", "PBE functional",
                                                        "Insulators", "Oxides"],
                 ["named_material", "named_functional", "cell_or_space_group"], {"input_dft": "PBE"}))
    add(scenario("diamond_scf_converged", "SCF for diamond carbon with conv_thr 1e-10 and ecutwfc 60 Ry.", "C", "3D",
                 "scf", ["scf", "diamond", "conv_thr", "ecutwfc"], ["SCF calculation", "Bulk crystal", "Insulators"],
                 ["named_material", "convergence_criteria", "units_given"], {"conv_thr": 1e-10, "ecutwfc": 60.0}))
    add(scenario("fe_spin_scf", "Spin-polarized SCF of bcc iron with starting magnetization 0.5.", "Fe", "3D", "scf",
                 ["spin-polarized", "iron", "nspin", "starting_magnetization"],
                 ["SCF calculation", "Spin-polarized calculation", "Ferromagnetic order", "Metallic systems",
                  "Starting magnetization"],
                 ["named_material", "spin_or_magnetism", "cell_or_space_group"],
                 {"nspin": 2, "starting_magnetization": 0.5, "occupations": "smearing", "degauss": 0.02}, fails=1))
    add(scenario("gaas_bands", "Compute the band structure of GaAs with 20 bands.", "GaAs", "3D", "bands",
                 ["band structure", "GaAs", "nbnd"], ["Band structure calculation", "Semiconductors", "Number of bands"],
                 ["named_material"], {"nbnd": 20}, fails=1))
    add(scenario("mos2_relax", "Relax monolayer MoS2 with a 12x12x1 k-mesh.", "MoS2", "2D", "relax",
                 ["relax", "monolayer", "k-mesh", "ion_dynamics"],
                 ["Structural relaxation", "Two-dimensional material", "Automatic k-point mesh"],
                 ["named_material", "kpoint_specification", "dimensionality"],
                 {"ion_dynamics": "bfgs", "K_POINTS": "12 12 1 0 0 0"}, fails=1))
    add(scenario("si_nscf", "Non-self-consistent calculation for silicon on a dense 16x16x16 grid.", "Si", "3D",
                 "nscf", ["nscf", "dense grid", "nbnd"], ["Non-self-consistent calculation", "Dense k-point sampling"],
                 ["named_material", "kpoint_specification"], {"K_POINTS": "16 16 16 0 0 0", "nbnd": 12}, fails=1))
    add(scenario("nacl_scf", "SCF calculation of NaCl.", "NaCl", "3D", "scf", ["scf", "NaCl"],
                 ["SCF calculation", "Insulators"], ["named_material"], fails=2))
    add(scenario("zno_relax", "Relax wurtzite ZnO with PBE and a force threshold of 1e-4 Ry/Bohr.", "ZnO", "3D",
                 "relax", ["relax", "forc_conv_thr", "PBE"], ["Structural relaxation", "PBE functional", "Oxides"],
                 ["named_material", "named_functional", "convergence_criteria", "units_given", "cell_or_space_group"],
                 {"forc_conv_thr": 1e-4, "input_dft": "PBE"}, fails=2))
    add(scenario("cu_md", "Molecular dynamics of copper for 50 steps with dt 20.", "Cu", "3D", "md",
                 ["molecular dynamics", "nstep", "dt"], ["Molecular dynamics", "Metallic systems"],
                 ["named_material", "units_given"], {"nstep": 50, "dt": 20.0}, fails=2))
    add(scenario("ni_magnetic", "Ferromagnetic nickel SCF with nspin 2 and cold smearing.", "Ni", "3D", "scf",
                 ["ferromagnetic", "nspin", "cold smearing", "starting_magnetization"],
                 ["SCF calculation", "Spin-polarized calculation", "Ferromagnetic order", "Cold smearing",
                  "Metallic systems"],
                 ["named_material", "spin_or_magnetism", "method_constraints"],
                 {"nspin": 2, "starting_magnetization": 0.6, "occupations": "smearing", "smearing": "cold",
                  "degauss": 0.02}, fails=3))
    add(scenario("tio2_vc_relax", "Variable-cell relaxation of rutile TiO2 at 0 kbar with bfgs.", "TiO2", "3D",
                 "vc-relax", ["vc-relax", "press", "cell_dynamics", "bfgs"],
                 ["Variable-cell relaxation", "Oxides", "Pressure applied"],
                 ["named_material", "cell_or_space_group", "units_given", "method_constraints"],
                 {"press": 0.0, "cell_dynamics": "bfgs", "ion_dynamics": "bfgs"}, fails=4))
    add(scenario("bn_scf", "SCF of hexagonal boron nitride monolayer.", "BN", "2D", "scf", ["scf", "monolayer", "hBN"],
                 ["SCF calculation", "Two-dimensional material", "Insulators"], ["named_material", "dimensionality"],
                 {"K_POINTS": "9 9 1 0 0 0"}, fails=5))
    add(scenario("nio_afm_hubbard", "Antiferromagnetic bulk rock-salt NiO with DFT+U, U = 6 eV on Ni d states, spin-polarized, "
                 "8x8x8 k-points and then a band structure.", "NiO", "3D", "scf",
                 ["DFT+U", "antiferromagnetic", "HUBBARD", "nspin"],
                 ["SCF calculation", "DFT+U", "Antiferromagnetic order", "Spin-polarized calculation",
                  "Transition-metal compounds", "Oxides"],
                 ["named_material", "spin_or_magnetism", "kpoint_specification", "units_given", "multiple_tasks",
                  "method_constraints", "named_functional", "cell_or_space_group", "dimensionality"],
                 {"nspin": 2, "starting_magnetization": 0.5, "K_POINTS": "8 8 8 0 0 0"}, fails=6))
    add(scenario("au_scf", "SCF of gold.", "Au", "3D", "scf", ["scf", "gold"], ["SCF calculation", "Metallic systems"],
                 ["named_material"], fails=7))
    add(scenario("pt_relax_vdw", "Relax platinum with Grimme-D3 dispersion, PBE, 10x10x10 k-points, "
                 "convergence 1e-8 and forces below 1e-4.", "Pt", "3D", "relax",
                 ["relax", "Grimme-D3", "vdw_corr", "PBE", "conv_thr"],
                 ["Structural relaxation", "Grimme-D3 dispersion", "PBE functional", "Metallic systems"],
                 ["named_material", "named_functional", "kpoint_specification", "convergence_criteria",
                  "method_constraints", "multiple_tasks", "units_given"],
                 {"vdw_corr": "grimme-d3", "input_dft": "PBE", "K_POINTS": "10 10 10 0 0 0", "conv_thr": 1e-8},
                 fails=8))
    add(scenario("ag_failure", "SCF of silver.", "Ag", "3D", "scf", ["scf", "silver"],
                 ["SCF calculation", "Metallic systems"], ["named_material"], fails=9))
    add(scenario("al_failure_persistent", "SCF of aluminium with 4x4x4 k-points.", "Al", "3D", "scf",
                 ["scf", "aluminium"], ["SCF calculation", "Metallic systems"],
                 ["named_material", "kpoint_specification"], {"K_POINTS": "4 4 4 0 0 0"}, fails=12))
    add(scenario("unknown_material", "SCF calculation for bulk xenon difluoride XeF2.", "XeF2", "3D", "scf",
                 ["scf"], ["SCF calculation"], ["named_material"], expect_status="failure", fault_script=[]))
    # the first model writes a misspelled keyword; the correction step returns a valid file
    add(scenario("si_typo_corrected", "SCF of silicon with ecutwfc 40 Ry and an 8x8x8 mesh.", "Si", "3D", "scf",
                 ["scf", "ecutwfc", "k-mesh"], ["SCF calculation", "Semiconductors", "Automatic k-point mesh"],
                 ["named_material", "kpoint_specification", "units_given"],
                 {"ecutwfc": 40.0, "K_POINTS": "8 8 8 0 0 0"},
                 extra=[
                     {"template": "protocol_generate",
                      "response": "```\n" + SI_OK.replace("ecutwfc = 40.0", "ecutwfcc = 40.0") + "```"},
                     {"template": "error_correct", "response": "Fixed the keyword.\n```\n" + SI_OK + "```"},
                 ],
                 expect_status="success"))
    out[-1]["expect"].update({"total_attempts": 1, "model_index": 0})
    return out


def main():
    (ROOT / "data" / "catalogs").mkdir(parents=True, exist_ok=True)
    (ROOT / "data" / "catalogs" / "base.json").write_text(json.dumps(base_catalog(), indent=2) + "\n")
    sdir = ROOT / "data" / "scenarios"
    sdir.mkdir(parents=True, exist_ok=True)
    for old in sdir.glob("*.json"):
        old.unlink()
    for i, s in enumerate(scenarios()):
        (sdir / f"{i:02d}_{s['name']}.json").write_text(json.dumps(s, indent=2) + "\n")


if __name__ == "__main__":
    main()
