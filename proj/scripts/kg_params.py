# Curated pw.x parameter table: (name, data_type, default, description[, allowed_values])
# Descriptions follow the public INPUT_PW documentation of Quantum ESPRESSO 7.2.

CONTROL = [
    ("calculation", "CHARACTER", "scf", "A string describing the task to be performed: scf, nscf, bands, relax, md, vc-relax, vc-md.",
     ["scf", "nscf", "bands", "relax", "md", "vc-relax", "vc-md"]),
    ("title", "CHARACTER", "", "Reprinted on output."),
    ("verbosity", "CHARACTER", "low", "Amount of printed output; high also prints symmetry operations, occupations and timing.",
     ["high", "low", "debug", "medium", "minimal", "default"]),
    ("restart_mode", "CHARACTER", "from_scratch", "Start from scratch or restart an interrupted calculation.", ["from_scratch", "restart"]),
    ("wf_collect", "LOGICAL", ".true.", "Obsolete; wavefunctions are always collected in the portable format."),
    ("nstep", "INTEGER", "1", "Number of molecular-dynamics or structural optimization steps performed in this run; 50 for relax."),
    ("iprint", "INTEGER", None, "Band energies are written every iprint iterations."),
    ("tstress", "LOGICAL", ".false.", "Calculate stress; set to true automatically for variable-cell calculations."),
    ("tprnfor", "LOGICAL", None, "Calculate forces; set to true automatically for relax and md."),
    ("dt", "REAL", "20.D0", "Time step for molecular dynamics in Rydberg atomic units."),
    ("outdir", "CHARACTER", "./", "Input, temporary and output files directory."),
    ("wfcdir", "CHARACTER", None, "Directory for per-process wavefunction files."),
    ("prefix", "CHARACTER", "pwscf", "Prepended to input and output file names."),
    ("lkpoint_dir", "LOGICAL", ".true.", "Obsolete; k-point subdirectories for the data file."),
    ("max_seconds", "REAL", "1.D+7", "Jobs stop after max_seconds elapsed wall time."),
    ("etot_conv_thr", "REAL", "1.0D-4", "Convergence threshold on total energy for ionic minimization, in Ry."),
    ("forc_conv_thr", "REAL", "1.0D-3", "Convergence threshold on forces for ionic minimization, in Ry/Bohr."),
    ("disk_io", "CHARACTER", None, "Amount of disk input/output performed.", ["high", "medium", "low", "nowf", "minimal", "none"]),
    ("pseudo_dir", "CHARACTER", "$HOME/espresso/pseudo/", "Directory containing the pseudopotential files."),
    ("tefield", "LOGICAL", ".false.", "If true a saw-like potential simulating an electric field is added to the bare ionic potential."),
    ("dipfield", "LOGICAL", ".false.", "If true and tefield is true a dipole correction is also added to the bare ionic potential."),
    ("lelfield", "LOGICAL", ".false.", "If true a homogeneous finite electric field described through the modern theory of polarization is applied."),
    ("nberrycyc", "INTEGER", "1", "Number of iterations for converging the wavefunctions in the electric field Hamiltonian."),
    ("lorbm", "LOGICAL", ".false.", "Perform orbital magnetization calculation."),
    ("lberry", "LOGICAL", ".false.", "If true perform a Berry phase calculation."),
    ("gdir", "INTEGER", None, "Direction of the k-point strings in reciprocal space for Berry phase calculations."),
    ("nppstr", "INTEGER", None, "Number of k-points to be calculated along each symmetry-reduced string for Berry phase."),
    ("gate", "LOGICAL", ".false.", "In the case of charged cells add a charged plate to model a gate and compensate the charge."),
    ("twochem", "LOGICAL", ".false.", "Simulate photoexcited systems with two chemical potentials for electrons and holes."),
    ("lfcp", "LOGICAL", ".false.", "Perform a constant bias potential calculation with the fictitious charge particle method."),
    ("trism", "LOGICAL", ".false.", "Perform a 3D-RISM-SCF calculation for solvated systems."),
]

SYSTEM = [
    ("ibrav", "INTEGER", None, "Bravais-lattice index; ibrav=0 requires the CELL_PARAMETERS card."),
    ("celldm", "REAL", None, "Crystallographic constants celldm(1)..celldm(6); celldm(1) is the lattice parameter a in Bohr."),
    ("A", "REAL", None, "Lattice parameter a in Angstrom, alternative to celldm."),
    ("B", "REAL", None, "Lattice parameter b in Angstrom."),
    ("C", "REAL", None, "Lattice parameter c in Angstrom."),
    ("cosAB", "REAL", None, "Cosine of the angle between axis a and b (gamma)."),
    ("cosAC", "REAL", None, "Cosine of the angle between axis a and c (beta)."),
    ("cosBC", "REAL", None, "Cosine of the angle between axis b and c (alpha)."),
    ("nat", "INTEGER", None, "Number of atoms in the unit cell."),
    ("ntyp", "INTEGER", None, "Number of types of atoms in the unit cell."),
    ("nbnd", "INTEGER", None, "Number of electronic states (bands) to be calculated; more bands are needed for metals and smearing."),
    ("nbnd_cond", "INTEGER", None, "Number of states in the conduction manifold for a two chemical potential calculation."),
    ("tot_charge", "REAL", "0.0", "Total charge of the system; useful for simulations with charged cells."),
    ("starting_charge", "REAL", "0.0", "Starting charge on atomic type i, used to build the starting potential."),
    ("tot_magnetization", "REAL", "-10000", "Total majority minus minority spin charge; imposes a fixed magnetization in spin-polarized calculations."),
    ("starting_magnetization", "REAL", "0", "Starting spin polarization on atomic type i in a spin-polarized or noncollinear calculation; values range between -1 and 1."),
    ("ecutwfc", "REAL", None, "Kinetic energy cutoff for wavefunctions in Ry."),
    ("ecutrho", "REAL", None, "Kinetic energy cutoff for charge density and potential in Ry; default 4 times ecutwfc, larger for ultrasoft and PAW pseudopotentials."),
    ("ecutfock", "REAL", None, "Kinetic energy cutoff for the exact exchange operator in EXX type calculations."),
    ("nr1", "INTEGER", None, "Three-dimensional FFT mesh dimension along the first axis (hard grid) for charge density."),
    ("nr2", "INTEGER", None, "Three-dimensional FFT mesh dimension along the second axis (hard grid)."),
    ("nr3", "INTEGER", None, "Three-dimensional FFT mesh dimension along the third axis (hard grid)."),
    ("nr1s", "INTEGER", None, "Three-dimensional mesh for wavefunction FFT and smooth part of charge density, first axis."),
    ("nr2s", "INTEGER", None, "Smooth FFT mesh dimension along the second axis."),
    ("nr3s", "INTEGER", None, "Smooth FFT mesh dimension along the third axis."),
    ("nosym", "LOGICAL", ".false.", "If true symmetry is not used; k-points are not reduced by symmetry."),
    ("nosym_evc", "LOGICAL", ".false.", "If true symmetry is not used and k-points are forced to have the symmetry of the Bravais lattice."),
    ("noinv", "LOGICAL", ".false.", "If true disable the usage of k to -k symmetry (time reversal) in k-point generation."),
    ("no_t_rev", "LOGICAL", ".false.", "If true disable the usage of magnetic symmetry operations that require time reversal."),
    ("force_symmorphic", "LOGICAL", ".false.", "If true force the symmetry group to be symmorphic by disabling fractional translations."),
    ("use_all_frac", "LOGICAL", ".false.", "If true do not discard symmetry operations with an associated fractional translation incommensurate with the FFT grid."),
    ("occupations", "CHARACTER", None, "Occupation scheme: smearing for metals, tetrahedra for DOS, fixed for insulators, from_input for user occupations.",
     ["smearing", "tetrahedra", "tetrahedra_lin", "tetrahedra_opt", "fixed", "from_input"]),
    ("one_atom_occupations", "LOGICAL", ".false.", "Define the occupations of isolated atoms from the initial wavefunctions in the order of the pseudopotential file."),
    ("starting_spin_angle", "LOGICAL", ".false.", "In the spin-orbit case use the starting magnetization angles for the initial wavefunctions."),
    ("degauss_cond", "REAL", "0.D0", "Gaussian spreading for brillouin-zone integration in the conduction manifold in a two chemical potential calculation."),
    ("nelec_cond", "REAL", "0.D0", "Number of electrons placed in the conduction manifold in a two chemical potential calculation."),
    ("degauss", "REAL", "0.D0", "Value of the gaussian spreading in Ry for brillouin-zone integration in metals."),
    ("smearing", "CHARACTER", "gaussian", "Type of smearing for metals: gaussian, methfessel-paxton, marzari-vanderbilt cold smearing, fermi-dirac.",
     ["gaussian", "gauss", "methfessel-paxton", "m-p", "mp", "marzari-vanderbilt", "cold", "m-v", "mv", "fermi-dirac", "f-d", "fd"]),
    ("nspin", "INTEGER", "1", "nspin=1 non-polarized calculation; nspin=2 spin-polarized (LSDA) calculation with magnetization along z.", ["1", "2"]),
    ("sic_gamma", "REAL", "0", "Strength of the gammaDFT potential for polaron self-interaction correction."),
    ("pol_type", "CHARACTER", None, "Type of polaron in gammaDFT self-interaction correction.", ["e", "h"]),
    ("sic_energy", "LOGICAL", ".false.", "Enable the calculation of the total energy in gammaDFT."),
    ("sci_vb", "REAL", "0", "Valence band shift in eV through self-consistent scissor operator."),
    ("sci_cb", "REAL", "0", "Conduction band shift in eV through self-consistent scissor operator."),
    ("noncolin", "LOGICAL", ".false.", "If true the program performs a noncollinear magnetism calculation; required for spin-orbit coupling."),
    ("ecfixed", "REAL", "0.0", "Parameter for the modified functional used in variable-cell molecular dynamics with constant cutoff."),
    ("qcutz", "REAL", "0.0", "Height of the modified kinetic functional for constant-cutoff variable-cell simulations."),
    ("q2sigma", "REAL", "0.1", "Width of the modified kinetic functional step."),
    ("input_dft", "CHARACTER", None, "Exchange-correlation functional overriding the value read from pseudopotential files, e.g. PBE, PBEsol, B3LYP, PBE0, HSE."),
    ("ace", "LOGICAL", ".true.", "Use adaptively compressed exchange operator for hybrid functionals."),
    ("exx_fraction", "REAL", None, "Fraction of exact exchange in hybrid functionals; 0.25 for PBE0 and HSE, 0.20 for B3LYP."),
    ("screening_parameter", "REAL", "0.106", "Screening parameter for HSE-like hybrid functionals."),
    ("exxdiv_treatment", "CHARACTER", "gygi-baldereschi", "Treatment of the divergence in the exact exchange integral.", ["gygi-baldereschi", "vcut_spherical", "vcut_ws", "none"]),
    ("x_gamma_extrapolation", "LOGICAL", ".true.", "Extrapolation of the exchange term at q=0 for hybrid functionals."),
    ("ecutvcut", "REAL", "0.0", "Reciprocal space cutoff for correcting Coulomb potential divergencies at small q vectors."),
    ("nqx1", "INTEGER", "1", "Three-dimensional mesh for q (k1-k2) sampling of the Fock operator, first direction."),
    ("nqx2", "INTEGER", "1", "Fock operator q-mesh, second direction."),
    ("nqx3", "INTEGER", "1", "Fock operator q-mesh, third direction."),
    ("localization_thr", "REAL", "0.0", "Overlap threshold over which the exchange integral over a pair of localized orbitals is computed."),
    ("Hubbard_occ", "REAL", None, "Hubbard occupations for the manifold of atomic type i used in DFT+U."),
    ("Hubbard_alpha", "REAL", "0.D0", "Hubbard alpha perturbation used to compute U from linear response."),
    ("Hubbard_beta", "REAL", "0.D0", "Hubbard beta perturbation used to compute J0 from linear response."),
    ("starting_ns_eigenvalue", "REAL", "-1.d0", "Overwrite the starting Hubbard occupation eigenvalues to break symmetry in DFT+U."),
    ("dmft", "LOGICAL", ".false.", "Read DMFT density matrix updates from file for DFT+DMFT embedding."),
    ("dmft_prefix", "CHARACTER", None, "Prefix of the DMFT update file."),
    ("ensemble_energies", "LOGICAL", ".false.", "Calculate the ensemble energies of a BEEF-vdW functional."),
    ("edir", "INTEGER", None, "Direction of the sawtooth electric field: 1, 2 or 3 for the reciprocal lattice vectors.", ["1", "2", "3"]),
    ("emaxpos", "REAL", "0.5D0", "Position of the maximum of the saw-like potential along edir, in crystal units."),
    ("eopreg", "REAL", "0.1D0", "Zone in the unit cell where the saw-like potential decreases."),
    ("eamp", "REAL", "0.001 a.u.", "Amplitude of the electric field in atomic units for the sawtooth potential."),
    ("angle1", "REAL", None, "Angle in degrees between the initial magnetization and the z-axis for atomic type i in noncollinear calculations."),
    ("angle2", "REAL", None, "Angle in degrees between the projection of the initial magnetization on the x-y plane and the x-axis."),
    ("lforcet", "LOGICAL", None, "Use the force theorem to calculate magnetic anisotropy energy in noncollinear spin-orbit runs."),
    ("constrained_magnetization", "CHARACTER", "none", "Used to perform constrained calculations in magnetic systems.", ["none", "total", "atomic", "total direction", "atomic direction"]),
    ("fixed_magnetization", "REAL", "0.d0", "Total magnetization vector components used with constrained_magnetization total."),
    ("lambda", "REAL", "1.d0", "Parameter used for constrained magnetization calculations; the Lagrange multiplier penalty."),
    ("report", "INTEGER", "-1", "Determines when atomic magnetic moments are printed on output."),
    ("lspinorb", "LOGICAL", None, "If true the noncollinear code can use a pseudopotential with spin-orbit coupling."),
    ("assume_isolated", "CHARACTER", "none", "Boundary conditions for isolated systems: makov-payne, martyna-tuckerman, esm, 2D cutoff.",
     ["none", "makov-payne", "m-p", "mp", "martyna-tuckerman", "m-t", "mt", "esm", "2D"]),
    ("esm_bc", "CHARACTER", "pbc", "Boundary conditions used for the effective screening medium method.", ["pbc", "bc1", "bc2", "bc3"]),
    ("esm_w", "REAL", "0.d0", "Position of the effective screening medium from the edge of the unit cell."),
    ("esm_efield", "REAL", "0.d0", "Magnitude of the electric field for bc2 effective screening medium."),
    ("esm_nfit", "INTEGER", "4", "Number of z-grid points for the polynomial fit along the cell edge in ESM."),
    ("lgcscf", "LOGICAL", ".false.", "If true perform a constant bias potential calculation with grand canonical SCF."),
    ("gcscf_mu", "REAL", None, "Target Fermi energy in eV for grand canonical SCF."),
    ("gcscf_conv_thr", "REAL", "1.D-2", "Convergence threshold of the Fermi energy in eV for grand canonical SCF."),
    ("gcscf_beta", "REAL", "0.05D0", "Mixing factor for the number of electrons in grand canonical SCF."),
    ("vdw_corr", "CHARACTER", "none", "Type of van der Waals correction: grimme-d2, grimme-d3, tkatchenko-scheffler, many-body dispersion, XDM.",
     ["none", "grimme-d2", "Grimme-D2", "DFT-D", "dft-d", "grimme-d3", "Grimme-D3", "DFT-D3", "dft-d3", "ts", "ts-vdw", "tkatchenko-scheffler", "mbd", "mbd_vdw", "many-body-dispersion", "xdm", "XDM"]),
    ("london", "LOGICAL", ".false.", "Obsolete; use vdw_corr grimme-d2 instead."),
    ("london_s6", "REAL", "0.75", "Global scaling parameter for DFT-D dispersion correction."),
    ("london_c6", "REAL", None, "Atomic C6 coefficient of each atom type for DFT-D."),
    ("london_rvdw", "REAL", None, "Atomic vdW radii of each atom type for DFT-D."),
    ("london_rcut", "REAL", "200", "Cutoff radius in a.u. for dispersion interactions."),
    ("dftd3_version", "INTEGER", "3", "Version of Grimme implementation of DFT-D3 damping.", ["2", "3", "4", "5", "6"]),
    ("dftd3_threebody", "LOGICAL", ".true.", "Turn three-body terms in Grimme-D3 on."),
    ("ts_vdw_econv_thr", "REAL", "1.D-6", "Convergence threshold for the Tkatchenko-Scheffler dispersion energy."),
    ("ts_vdw_isolated", "LOGICAL", ".false.", "Compute Tkatchenko-Scheffler energy for an isolated non-periodic system."),
    ("xdm", "LOGICAL", ".false.", "Obsolete; use vdw_corr xdm instead."),
    ("xdm_a1", "REAL", "0.6836", "Damping function parameter a1 for the exchange-hole dipole moment model."),
    ("xdm_a2", "REAL", "1.5045", "Damping function parameter a2 in Angstrom for XDM."),
    ("space_group", "INTEGER", "0", "Space group number as in International Tables; atomic positions then use Wyckoff positions."),
    ("uniqueb", "LOGICAL", ".false.", "Used only for monoclinic lattices; if true the b unique axis is used."),
    ("origin_choice", "INTEGER", "1", "Used for space groups that in the International Tables report two origin choices."),
    ("rhombohedral", "LOGICAL", ".true.", "Used only for rhombohedral space groups with hexagonal or rhombohedral axes."),
    ("zgate", "REAL", "0.5", "Position of the charged plate representing the counter-charge in doped systems, in crystal units."),
    ("relaxz", "LOGICAL", ".false.", "Allow the relaxation of the system towards the charged plate in gate calculations."),
    ("block", "LOGICAL", ".false.", "Add a potential barrier to the total potential seen by electrons to mimic a dielectric in a field effect configuration."),
    ("block_1", "REAL", "0.45", "Lower beginning of the potential barrier in crystal coordinates."),
    ("block_2", "REAL", "0.55", "Upper beginning of the potential barrier in crystal coordinates."),
    ("block_height", "REAL", "0.1", "Height of the potential barrier in Rydberg."),
    ("nextffield", "INTEGER", "0", "Number of activated external ionic force fields."),
]

ELECTRONS = [
    ("electron_maxstep", "INTEGER", "100", "Maximum number of iterations in a scf step; if exact exchange is active the maximum inner iterations."),
    ("exx_maxstep", "INTEGER", "100", "Maximum number of outer iterations in a scf calculation with exact exchange."),
    ("scf_must_converge", "LOGICAL", ".true.", "If false do not stop molecular dynamics or ionic relaxation when electron_maxstep is reached."),
    ("conv_thr", "REAL", "1.D-6", "Convergence threshold for selfconsistency: estimated energy error below conv_thr in Ry."),
    ("adaptive_thr", "LOGICAL", ".false.", "If true use an adaptive convergence threshold for the inner cycle of EXX calculations."),
    ("conv_thr_init", "REAL", "1.D-3", "When adaptive_thr is true this is the convergence threshold used for the first scf cycle."),
    ("conv_thr_multi", "REAL", "1.D-1", "When adaptive_thr is true the convergence threshold for each scf cycle is scaled by this factor."),
    ("mixing_mode", "CHARACTER", "plain", "Charge density mixing mode: plain Broyden, TF for homogeneous systems, local-TF for inhomogeneous systems such as surfaces.",
     ["plain", "TF", "local-TF"]),
    ("mixing_beta", "REAL", "0.7D0", "Mixing factor for self-consistency; reduce for slow convergence in metals and magnetic systems."),
    ("mixing_ndim", "INTEGER", "8", "Number of iterations used in the Broyden mixing scheme."),
    ("mixing_fixed_ns", "INTEGER", "0", "For DFT+U: number of iterations with fixed Hubbard occupations ns."),
    ("diagonalization", "CHARACTER", "david", "Iterative diagonalization algorithm: david, cg, ppcg, paro, rmm-davidson, rmm-paro.",
     ["david", "cg", "ppcg", "paro", "rmm-davidson", "rmm-paro"]),
    ("diago_thr_init", "REAL", None, "Convergence threshold for the first iterative diagonalization."),
    ("diago_cg_maxiter", "INTEGER", None, "For conjugate gradient diagonalization: maximum number of iterations."),
    ("diago_ppcg_maxiter", "INTEGER", None, "For ppcg diagonalization: maximum number of iterations."),
    ("diago_david_ndim", "INTEGER", "2", "For Davidson diagonalization: dimension of the workspace in number of wavefunction packets."),
    ("diago_rmm_ndim", "INTEGER", "4", "Dimension of the workspace for RMM-DIIS diagonalization."),
    ("diago_rmm_conv", "LOGICAL", ".false.", "If true RMM-DIIS is performed up to converge."),
    ("diago_gs_nblock", "INTEGER", "16", "Blocking size in Gram-Schmidt orthogonalization for RMM-DIIS."),
    ("diago_full_acc", "LOGICAL", ".false.", "If true all empty states are diagonalized at the same level of accuracy as occupied ones."),
    ("efield", "REAL", "0.D0", "Amplitude of the finite electric field in Ry a.u. when lelfield is true."),
    ("efield_cart", "REAL", "(0.D0, 0.D0, 0.D0)", "Finite electric field in Ry a.u. in cartesian axis when lelfield is true."),
    ("efield_phase", "CHARACTER", "none", "Write the Berry phase of the electronic polarization in the finite field.", ["read", "write", "none"]),
    ("startingpot", "CHARACTER", "atomic", "Starting potential: atomic superposition or read from file.", ["atomic", "file"]),
    ("startingwfc", "CHARACTER", "atomic+random", "Starting wavefunctions: atomic, atomic+random, random or file.", ["atomic", "atomic+random", "random", "file"]),
    ("tqr", "LOGICAL", ".false.", "If true real-space algorithm for augmentation charges of ultrasoft pseudopotentials and PAW."),
    ("real_space", "LOGICAL", ".false.", "If true exploit real-space localization to compute matrix elements for nonlocal projectors."),
]

IONS = [
    ("ion_positions", "CHARACTER", "default", "Restart behaviour for ionic positions.", ["default", "from_input"]),
    ("ion_velocities", "CHARACTER", "default", "Initial ionic velocities.", ["default", "from_input"]),
    ("ion_dynamics", "CHARACTER", None, "Algorithm for ionic dynamics: bfgs or damp or fire for relax, verlet or langevin for md, bfgs or damp for vc-relax, beeman for vc-md.",
     ["bfgs", "damp", "fire", "verlet", "langevin", "langevin-smc", "beeman"]),
    ("pot_extrapolation", "CHARACTER", "atomic", "Potential extrapolation used to obtain a good starting guess for the next ionic step.",
     ["none", "atomic", "first_order", "second_order"]),
    ("wfc_extrapolation", "CHARACTER", "none", "Wavefunction extrapolation for the next ionic step.", ["none", "first_order", "second_order"]),
    ("remove_rigid_rot", "LOGICAL", ".false.", "If true the total torque of the internal forces is set to zero for isolated systems."),
    ("ion_temperature", "CHARACTER", "not_controlled", "Ionic temperature control for molecular dynamics.",
     ["rescaling", "rescale-v", "rescale-T", "reduce-T", "berendsen", "andersen", "svr", "initial", "not_controlled"]),
    ("tempw", "REAL", "300.D0", "Starting temperature in Kelvin for molecular dynamics."),
    ("tolp", "REAL", "100.D0", "Tolerance for velocity rescaling."),
    ("delta_t", "REAL", "1.D0", "Temperature change for rescale-T and reduce-T."),
    ("nraise", "INTEGER", "1", "Number of steps between temperature changes in molecular dynamics."),
    ("refold_pos", "LOGICAL", ".false.", "If true the ions are refolded at each step into the supercell."),
    ("upscale", "REAL", "100.D0", "Max reduction factor for conv_thr during structural optimization."),
    ("bfgs_ndim", "INTEGER", "1", "Number of old forces and displacements vectors used in the BFGS history."),
    ("trust_radius_max", "REAL", "0.8D0", "Maximum ionic displacement in the structural relaxation, in bohr."),
    ("trust_radius_min", "REAL", "1.D-3", "Minimum ionic displacement in the structural relaxation before BFGS history reset."),
    ("trust_radius_ini", "REAL", "0.5D0", "Initial ionic displacement in the structural relaxation."),
    ("w_1", "REAL", "0.01D0", "Parameter used in line search for BFGS (first Wolfe condition)."),
    ("w_2", "REAL", "0.5D0", "Parameter used in line search for BFGS (second Wolfe condition)."),
    ("fire_alpha_init", "REAL", "0.2D0", "Initial value of the alpha mixing factor in the FIRE minimization scheme."),
    ("fire_falpha", "REAL", "0.99D0", "Scaling of the alpha mixing parameter for steps with positive power in FIRE."),
    ("fire_nmin", "INTEGER", "5", "Minimum number of steps with positive power before increasing the FIRE time step."),
    ("fire_f_inc", "REAL", "1.1D0", "Factor for increasing the FIRE time step."),
    ("fire_f_dec", "REAL", "0.5D0", "Factor for decreasing the FIRE time step."),
    ("fire_dtmax", "REAL", "10.D0", "Maximum time step in FIRE, in units of dt."),
]

CELL = [
    ("cell_dynamics", "CHARACTER", None, "Type of dynamics for the cell: bfgs for vc-relax, pr or w for vc-md.", ["none", "sd", "damp-pr", "damp-w", "bfgs", "pr", "w"]),
    ("press", "REAL", "0.D0", "Target pressure in KBar in a variable-cell simulation."),
    ("wmass", "REAL", None, "Fictitious cell mass in amu for variable-cell simulations."),
    ("cell_factor", "REAL", "2.0", "Used in the construction of the pseudopotential tables; should exceed the maximum linear strain."),
    ("press_conv_thr", "REAL", "0.5D0", "Convergence threshold on the pressure for variable cell relaxation in Kbar."),
    ("cell_dofree", "CHARACTER", "all", "Select which of the cell parameters should be moved, e.g. all, ibrav, 2Dxy, 2Dshape for layered materials.",
     ["all", "ibrav", "a", "b", "c", "fixa", "fixb", "fixc", "x", "y", "z", "xy", "xz", "yz", "xyz", "shape", "volume", "2Dxy", "2Dshape", "epitaxial_ab", "epitaxial_ac", "epitaxial_bc"]),
]

FCP = [
    ("fcp_mu", "REAL", None, "Target Fermi energy in eV for the fictitious charge particle method."),
    ("fcp_dynamics", "CHARACTER", "bfgs", "Type of dynamics for the fictitious charge particle.", ["bfgs", "newton", "damp", "lm", "velocity-verlet", "verlet"]),
    ("fcp_conv_thr", "REAL", "1.D-2", "Convergence threshold on force for the fictitious charge particle in eV."),
    ("fcp_ndiis", "INTEGER", "4", "Size of DIIS for Newton-Raphson fictitious charge particle relaxation."),
    ("fcp_mass", "REAL", None, "Mass of the fictitious charge particle."),
    ("fcp_velocity", "REAL", None, "Initial velocity of the fictitious charge particle."),
    ("fcp_temperature", "CHARACTER", "not_controlled", "Temperature control of the fictitious charge particle."),
    ("fcp_tempw", "REAL", "300.D0", "Starting temperature in Kelvin for the fictitious charge particle dynamics."),
    ("fcp_tolp", "REAL", "100.D0", "Tolerance for velocity rescaling of the fictitious charge particle."),
    ("fcp_delta_t", "REAL", "1.D0", "Temperature change for the fictitious charge particle rescaling."),
    ("fcp_nraise", "INTEGER", "1", "Number of steps between fictitious charge particle temperature changes."),
    ("freeze_all_atoms", "LOGICAL", ".false.", "If true freeze all atoms to perform a relaxation or dynamics only of the fictitious charge particle."),
]

CARDS = [
    ("ATOMIC_SPECIES", "Card listing each atomic species: label, atomic mass and pseudopotential file name.", True),
    ("ATOMIC_POSITIONS", "Card with atomic positions in alat, bohr, angstrom or crystal units, optionally with fixed-coordinate flags.", True),
    ("K_POINTS", "Card describing k-point sampling: automatic Monkhorst-Pack mesh with offsets, gamma, or explicit list in tpiba or crystal units.", True),
    ("ADDITIONAL_K_POINTS", "Card with extra k-points added for the exact exchange or band structure calculations.", False),
    ("CELL_PARAMETERS", "Card with the lattice vectors in alat, bohr or angstrom units; mandatory when ibrav=0.", False),
    ("CONSTRAINTS", "Card defining ionic constraints for constrained relaxation or molecular dynamics.", False),
    ("OCCUPATIONS", "Card with user-defined band occupations when occupations is from_input.", False),
    ("ATOMIC_VELOCITIES", "Card with starting ionic velocities when ion_velocities is from_input.", False),
    ("ATOMIC_FORCES", "Card with external forces applied to atoms.", False),
    ("SOLVENTS", "Card describing solvent molecules for 3D-RISM calculations.", False),
    ("HUBBARD", "Card specifying Hubbard U, J, V parameters and projectors for DFT+U and DFT+U+V.", False),
]

RISM = [
    ("nsolv", "INTEGER", None, "Number of solvents in the unit cell for 3D-RISM."),
    ("closure", "CHARACTER", "kh", "Type of closure equation for RISM: Kovalenko-Hirata or hypernetted chain.", ["kh", "hnc"]),
    ("tempv", "REAL", "300.0", "Temperature in Kelvin of the solvent system."),
    ("ecutsolv", "REAL", None, "Kinetic energy cutoff in Ry for the solvent correlation functions."),
    ("solute_lj", "CHARACTER", "uff", "Lennard-Jones potential of the solute on atomic type i.", ["none", "uff", "clayff", "opls-aa"]),
    ("solute_epsilon", "REAL", None, "User-defined Lennard-Jones epsilon of the solute in kcal/mol."),
    ("solute_sigma", "REAL", None, "User-defined Lennard-Jones sigma of the solute in Angstrom."),
    ("starting1d", "CHARACTER", "zero", "Initial correlation function of 1D-RISM.", ["zero", "file", "fix"]),
    ("starting3d", "CHARACTER", "zero", "Initial correlation function of 3D-RISM.", ["zero", "file"]),
    ("smear1d", "REAL", "2.0", "Smearing radius of the solvent-solvent interaction in 1D-RISM, in bohr."),
    ("smear3d", "REAL", "2.0", "Smearing radius of the solute-solvent interaction in 3D-RISM, in bohr."),
    ("rism1d_maxstep", "INTEGER", "50000", "Maximum number of iterations in a 1D-RISM step."),
    ("rism3d_maxstep", "INTEGER", "5000", "Maximum number of iterations in a 3D-RISM step."),
    ("rism1d_conv_thr", "REAL", "1.0E-8", "Convergence threshold for 1D-RISM."),
    ("rism3d_conv_thr", "REAL", "1.0E-5", "Convergence threshold for 3D-RISM."),
    ("mdiis1d_size", "INTEGER", "20", "Size of the modified DIIS for 1D-RISM."),
    ("mdiis3d_size", "INTEGER", "10", "Size of the modified DIIS for 3D-RISM."),
    ("mdiis1d_step", "REAL", "0.5", "Step of the modified DIIS for 1D-RISM."),
    ("mdiis3d_step", "REAL", "0.8", "Step of the modified DIIS for 3D-RISM."),
    ("rism1d_bond_width", "REAL", "0.0", "Gaussian width of intramolecular correlation in 1D-RISM."),
    ("rism1d_dielectric", "REAL", "-1.0", "Dielectric constant for dielectrically consistent 1D-RISM."),
    ("laue_nfit", "INTEGER", "4", "Number of z-grid points for the polynomial fit along the cell edge in Laue-RISM."),
    ("laue_expand_right", "REAL", "-1.0", "Expansion of the Laue-RISM unit cell towards the right side, in bohr."),
    ("laue_expand_left", "REAL", "-1.0", "Expansion of the Laue-RISM unit cell towards the left side, in bohr."),
]
