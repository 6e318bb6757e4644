// Copyright 2026 The cpl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cpl/cli.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "cpl/compiler.h"
#include "cpl/errors.h"
#include "cpl/json_io.h"
#include "cpl/star_reduction.h"

namespace cpl {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Check {
    std::string name;
    bool pass;
    double residual;
};

struct Report {
    std::vector<Check> checks;

    void add(const std::string &name, bool pass, double residual) {
        checks.push_back({name, pass, residual});
    }
    bool pass() const {
        for (const Check &c : checks) {
            if (!c.pass) {
                return false;
            }
        }
        return true;
    }
    Json to_json() const {
        Json arr = Json::array();
        for (const Check &c : checks) {
            arr.push_back({{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}});
        }
        return arr;
    }
};

void require_even_ring(int n) {
    if (n < 4 || n % 2) {
        throw UsageError("--n must be even and at least 4");
    }
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void emit(const RunConfig &cfg, std::ostream &out, const std::string &text) {
    if (cfg.out.empty()) {
        out << text;
    } else {
        write_text_file(cfg.out, text);
    }
}

Report verify_symmetries(const RunConfig &cfg) {
    require_even_ring(cfg.n);
    TorusLattice lat(cfg.n, cfg.N);
    Report r;
    auto syms = all_symmetries(lat);
    int bad = 0;
    for (size_t i = 0; i < syms.size(); i++) {
        bad += !syms[i].op.is_x_type();
        for (size_t j = i + 1; j < syms.size(); j++) {
            bad += commutes(syms[i].op, syms[j].op) < 0;
        }
    }
    r.add("symmetries_x_type_and_commuting", bad == 0, bad);
    bad = 0;
    for (int x = 0; x < lat.long_size(); x++) {
        for (int y = 0; y < lat.n(); y++) {
            bad += !is_symmetric(lat, star(lat, x, y));
        }
    }
    r.add("stars_symmetric", bad == 0, bad);
    bad = 0;
    for (size_t k = 0; k < lat.num_sites(); k++) {
        bad += is_symmetric(lat, PauliOperator::single(lat.num_sites(), k, 'Z'));
    }
    r.add("single_z_not_symmetric", bad == 0, bad);
    if (cfg.N == 1) {
        bad = 0;
        int n = cfg.n;
        for (int x = 0; x < n; x++) {
            for (int y = 0; y < n; y++) {
                auto p = PauliOperator::z_on(lat.num_sites(), {lat.index(x, y), lat.index(x + n / 2, y + n / 2)});
                bad += !is_symmetric(lat, p);
            }
        }
        r.add("half_torus_pair_symmetric", bad == 0, bad);
    }
    return r;
}

Report verify_stars(const RunConfig &cfg, int samples) {
    require_even_ring(cfg.n);
    if (samples < 1) {
        throw UsageError("--samples must be positive");
    }
    TorusLattice lat(cfg.n, cfg.N);
    Rng rng(cfg.seed);
    Report r;
    int bad_product = 0;
    int bad_gf2 = 0;
    for (int s = 0; s < samples; s++) {
        ZSupport z = sample_local_symmetric_z(lat, rng);
        StarDecomposition d = reduce_to_stars(z);
        bad_product += !(star_product(lat, d) == z);
        auto g = gf2_star_solve(z);
        if (!g) {
            bad_gf2++;
            continue;
        }
        StarDecomposition diff = d;
        for (Site c : g->centers) {
            diff.toggle(c);
        }
        bad_gf2 += !star_product(lat, diff).empty();
    }
    r.add("decompositions_multiply_back", bad_product == 0, bad_product);
    r.add("agrees_with_gf2_modulo_kernel", bad_gf2 == 0, bad_gf2);
    bool rejected = false;
    try {
        reduce_to_stars(ZSupport(lat, {{0, 0}, {cfg.n / 2, cfg.n / 2}}));
    } catch (const NotLocal &) {
        rejected = true;
    }
    r.add("half_torus_pair_not_local", rejected, rejected ? 0 : 1);
    rejected = false;
    try {
        reduce_to_stars(ZSupport(lat, {{1, 2}}));
    } catch (const NotSymmetric &) {
        rejected = true;
    }
    r.add("single_z_not_symmetric", rejected, rejected ? 0 : 1);
    return r;
}

Report verify_qca(const RunConfig &cfg) {
    require_even_ring(cfg.n);
    if (cfg.n > 64) {
        throw UsageError("--n must be at most 64");
    }
    int n = cfg.n;
    Report r;
    int period = qca_period(n);
    r.add("period_equals_n", period == n, period);
    int nonzero = 0;
    for (int ph : qca_period_phases(n)) {
        nonzero += ph != 0;
    }
    r.add("period_phases_trivial", nonzero == 0, nonzero);
    QcaStep step(n);
    if (n <= 8) {
        Mat c = hadamard_all_matrix(n) * cz_ring_matrix(n);
        double worst = 0;
        for (int k = 0; k < n; k++) {
            for (char g : {'X', 'Z'}) {
                auto p = PauliOperator::single(n, k, g);
                worst = std::max(worst, (pauli_matrix(step.conjugate(p)) - c * pauli_matrix(p) * c.adjoint()).norm());
            }
        }
        r.add("dense_conjugation", worst <= 1e-10, worst);
    }
    Rng rng(cfg.seed);
    int bad = 0;
    for (int trial = 0; trial < 50; trial++) {
        BlockConfig bc(n);
        Tableau t = Tableau::from_pauli(RingPauli(n));
        for (int ring = 0; ring < n; ring++) {
            for (int y = 0; y < n; y++) {
                bc.set(ring, y, rng.bit());
            }
            t = t.then(step.component(bc.rings[ring]));
        }
        auto p = t.as_pauli();
        bad += !p || !p->same_support_as(block_byproduct(step, bc));
    }
    r.add("block_byproduct_is_pauli", bad == 0, bad);
    return r;
}

Report verify_tensors(const RunConfig &cfg) {
    if (cfg.n != 4 && cfg.n != 6) {
        throw UsageError("tensor checks support --n 4 or 6");
    }
    if (cfg.family != "xx-diagonal") {
        throw UsageError("unknown family '" + cfg.family + "'");
    }
    int n = cfg.n;
    Report r;
    Peps5Tensor t = cluster_peps_tensor();
    double worst = 0;
    auto syms = cluster_tensor_symmetries();
    syms.push_back(cluster_tensor_extra_symmetry());
    for (const auto &s : syms) {
        worst = std::max(worst, (t.apply(s).data - t.data).norm());
    }
    r.add("cluster_tensor_symmetries", worst <= 1e-12, worst);
    worst = 0;
    for (uint64_t c = 0; c < (uint64_t{1} << n); c++) {
        worst = std::max(worst, distance_up_to_phase(cluster_ring_matrix(n, c), clifford_component_matrix(n, c)));
    }
    r.add("ring_contraction_is_clifford", worst <= 1e-10, worst);
    Rng rng(cfg.seed);
    worst = 0;
    for (int trial = 0; trial < 20; trial++) {
        uint64_t c = rng.below(uint64_t{1} << n);
        DerivedTransition d = derive_transition_from_symmetries(n, c);
        worst = std::max(worst, distance_up_to_phase(d.op, clifford_component_matrix(n, c)));
    }
    r.add("transition_from_symmetries", worst <= 1e-10, worst);
    double theta = cfg.theta == 0.0 ? 0.1 : cfg.theta;
    RingTensor rt = build_perturbed_ring_tensors(n, {cfg.family, theta, n});
    r.add("perturbed_factorization", rt.residual <= 1e-8, rt.residual);
    BlockChannel ch = BlockChannel::from_ring_tensor(rt);
    r.add("canonical_channel_trace_preserving", ch.trace_preservation_error() <= 1e-10,
          ch.trace_preservation_error());
    return r;
}

int cmd_verify(const RunConfig &cfg, const std::string &suite, int samples, std::ostream &out) {
    Report r;
    if (suite == "symmetries") {
        r = verify_symmetries(cfg);
    } else if (suite == "stars") {
        r = verify_stars(cfg, samples);
    } else if (suite == "qca") {
        r = verify_qca(cfg);
    } else if (suite == "tensors") {
        r = verify_tensors(cfg);
    } else {
        throw UsageError("unknown suite '" + suite + "'");
    }
    Json j = {{"suite", suite}, {"n", cfg.n}, {"pass", r.pass()}, {"checks", r.to_json()}};
    emit(cfg, out, j.dump(2) + "\n");
    return r.pass() ? EXIT_OK : EXIT_CHECK_FAILED;
}

struct CalibrationRow {
    double theta;
    std::string status = "ok";
    ResourceCalibration cal{};
};

int cmd_calibrate(const RunConfig &cfg, double theta_max, double step, bool single, const std::string &format,
                  std::ostream &out) {
    int n = cfg.n < 0 ? 4 : cfg.n;
    if (n != 4 && n != 6) {
        throw UsageError("calibration supports --n 4 or 6");
    }
    if (cfg.family != "xx-diagonal") {
        throw UsageError("unknown family '" + cfg.family + "'");
    }
    if (format != "csv" && format != "json") {
        throw UsageError("--format must be csv or json");
    }
    std::vector<CalibrationRow> rows;
    if (single) {
        rows.push_back({cfg.theta});
    } else {
        if (!(step > 0) || theta_max < 0) {
            throw UsageError("theta grid needs a positive step and non-negative maximum");
        }
        int count = (int)std::floor(theta_max / step + 1e-9);
        for (int i = 0; i <= count; i++) {
            rows.push_back({std::round(i * step * 1e12) / 1e12});
        }
    }
    auto work = [&](CalibrationRow &row) {
        try {
            RingTensor rt = build_perturbed_ring_tensors(n, {cfg.family, row.theta, n});
            row.cal = calibrate(BlockChannel::from_ring_tensor(rt));
        } catch (const NotInjective &) {
            row.status = "not_injective";
        } catch (const FactorizationFailed &) {
            row.status = "factorization_failed";
        } catch (const NumericalError &) {
            row.status = "numerical_error";
        } catch (const DomainError &) {
            row.status = "out_of_domain";
        } catch (const std::exception &) {
            row.status = "error";
        }
    };
    int workers = std::max(1, std::min(thread_cap(), (int)rows.size()));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; w++) {
        pool.emplace_back([&, w]() {
            for (size_t i = w; i < rows.size(); i += workers) {
                work(rows[i]);
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
    std::ostringstream ss;
    if (format == "csv") {
        ss << "theta,nu_abs,nu_arg,xi,lambda1,junk_dim,status\n";
        for (const auto &r : rows) {
            ss << fmt(r.theta) << "," << fmt(r.cal.nu_abs) << "," << fmt(r.cal.nu_arg) << "," << fmt(r.cal.xi) << ","
               << fmt(r.cal.lambda1) << "," << r.cal.junk_dim << "," << r.status << "\n";
        }
    } else {
        Json arr = Json::array();
        for (const auto &r : rows) {
            arr.push_back({{"theta", r.theta},
                           {"nu", complex_to_json(r.cal.nu)},
                           {"nu_abs", r.cal.nu_abs},
                           {"nu_arg", r.cal.nu_arg},
                           {"xi", r.cal.xi},
                           {"lambda1", r.cal.lambda1},
                           {"junk_dim", r.cal.junk_dim},
                           {"slice_error_coeff", r.cal.slice_error_coeff},
                           {"status", r.status}});
        }
        ss << Json({{"family", cfg.family}, {"n", n}, {"rows", arr}}).dump(2) << "\n";
    }
    emit(cfg, out, ss.str());
    bool ok = true;
    for (const auto &r : rows) {
        ok = ok && r.status == "ok";
    }
    return ok ? EXIT_OK : EXIT_CHECK_FAILED;
}

struct RunExtras {
    std::string circuit_path;
    std::string backend = "channel";
    std::string init = "x";
    int reps = -1;
    double min_fidelity = -1;
    std::string program_out;
};

int cmd_run(const RunConfig &cfg, const RunExtras &ex, std::ostream &out) {
    if (cfg.family != "xx-diagonal") {
        throw UsageError("unknown family '" + cfg.family + "'");
    }
    LogicalCircuit circ;
    try {
        circ = LogicalCircuit::from_json(read_json_file(ex.circuit_path));
    } catch (const DomainError &e) {
        throw UsageError(e.what());
    }
    int n = cfg.n < 0 ? std::max(4, 2 * circ.n_logical) : cfg.n;
    require_even_ring(n);
    if (n != 4 && n != 6) {
        throw UsageError("runs support ring sizes 4 and 6");
    }
    if (2 * circ.n_logical > n) {
        throw UsageError("circuit needs more logical qubits than --n carries");
    }
    Backend backend;
    if (ex.backend == "channel") {
        backend = Backend::Channel;
    } else if (ex.backend == "trajectory") {
        backend = Backend::Trajectory;
    } else {
        throw UsageError("--backend must be channel or trajectory");
    }
    CompileOptions opts;
    if (ex.init == "x") {
        opts.init = InitMode::MeasureX;
    } else if (ex.init == "z") {
        opts.init = InitMode::MeasureZRotate;
    } else {
        throw UsageError("--init must be x or z");
    }
    opts.dalpha = cfg.dalpha;
    opts.wire_blocks = cfg.wire;
    opts.readout_reps = ex.reps;
    if (!(cfg.dalpha > 0 && cfg.dalpha <= 0.1)) {
        throw UsageError("--dalpha must lie in (0, 0.1]");
    }
    if (!(cfg.tol > 1e-6 && cfg.tol < 0.5)) {
        throw UsageError("--tol must lie in (1e-6, 0.5)");
    }
    RingTensor rt = build_perturbed_ring_tensors(n, {cfg.family, cfg.theta, n});
    BlockChannel ch = BlockChannel::from_ring_tensor(rt);
    ResourceCalibration cal = calibrate(ch);
    CompiledProgram prog = compile(circ, cfg.tol, ResourceParams::from_calibration(n, cal), opts);
    if (!ex.program_out.empty()) {
        write_text_file(ex.program_out, prog.to_json().dump(2) + "\n");
    }
    ExecuteResult res = execute(prog, ch, cfg.seed, backend);
    Mat oracle = oracle_simulate(circ);
    double fid = fidelity(res.logical, oracle);
    Json stats = {{"nu", complex_to_json(res.stats.nu)},
                  {"xi", res.stats.xi},
                  {"lambda1", res.stats.lambda1},
                  {"junk_dim", res.stats.junk_dim},
                  {"slices", res.stats.slices},
                  {"blocks", res.stats.blocks},
                  {"init_outcomes", res.stats.init_outcomes},
                  {"readout", res.stats.readout},
                  {"readout_p0", res.stats.readout_p0}};
    if (!cfg.deterministic) {
        stats["wall_seconds"] = res.stats.wall_seconds;
    }
    Json j = {{"fidelity", fid},
              {"logical_state", matrix_to_json(res.logical)},
              {"oracle_state", matrix_to_json(oracle)},
              {"stats", stats},
              {"calibration",
               {{"family", cfg.family},
                {"theta", cfg.theta},
                {"nu_abs", cal.nu_abs},
                {"nu_arg", cal.nu_arg},
                {"delta", cal.delta},
                {"slice_error_coeff", cal.slice_error_coeff}}},
              {"program",
               {{"n", prog.n},
                {"total_slices", prog.total_slices()},
                {"dalpha", prog.dalpha},
                {"wire_blocks", prog.wire_blocks},
                {"readout_reps", prog.readout_reps},
                {"error_floor", prog.error_floor},
                {"epsilon", prog.epsilon},
                {"init", ex.init},
                {"backend", ex.backend},
                {"seed", cfg.seed}}}};
    emit(cfg, out, j.dump(2) + "\n");
    if (ex.min_fidelity >= 0 && fid < ex.min_fidelity) {
        return EXIT_CHECK_FAILED;
    }
    return EXIT_OK;
}

char pauli_char(const RingPauli &p, int k) {
    bool x = p.x(k);
    bool z = p.z(k);
    return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
}

int cmd_qca_evolve(const RunConfig &cfg, int steps, const std::string &pauli, std::ostream &out) {
    int n = cfg.n < 0 ? 6 : cfg.n;
    if (n < 3) {
        throw UsageError("--n must be at least 3");
    }
    if (steps == -1) {
        steps = n;
    }
    if (steps < 0) {
        throw UsageError("--steps must be non-negative");
    }
    RingPauli p(n);
    if (pauli.empty()) {
        p = RingPauli::single(n, 0, 'Z');
    } else {
        try {
            p = PauliOperator::from_str(pauli);
        } catch (const std::exception &e) {
            throw UsageError(e.what());
        }
        if ((int)p.size() != n) {
            throw UsageError("--pauli length must equal --n");
        }
    }
    QcaStep step(n);
    std::ostringstream ss;
    for (const RingPauli &r : qca_evolve(step, p, steps)) {
        for (int k = 0; k < n; k++) {
            ss << pauli_char(r, k);
        }
        ss << "\n";
    }
    emit(cfg, out, ss.str());
    return EXIT_OK;
}

int cmd_qca_period(const RunConfig &cfg, std::ostream &out) {
    require_even_ring(cfg.n);
    int p;
    try {
        p = qca_period(cfg.n);
    } catch (const DomainError &e) {
        throw UsageError(e.what());
    }
    emit(cfg, out, Json({{"n", cfg.n}, {"period", p}}).dump(2) + "\n");
    return EXIT_OK;
}

std::vector<Site> parse_sites(const std::string &text) {
    std::vector<Site> sites;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) {
            continue;
        }
        int x;
        int y;
        char comma;
        std::stringstream is(item);
        if (!(is >> x >> comma >> y) || comma != ',') {
            throw UsageError("sites are written as x,y;x,y");
        }
        sites.push_back({x, y});
    }
    return sites;
}

int cmd_reduce_z(const RunConfig &cfg, const std::string &sites_text, bool random, std::ostream &out,
                 std::ostream &err) {
    require_even_ring(cfg.n);
    TorusLattice lat(cfg.n, cfg.N);
    ZSupport z(lat);
    if (random) {
        Rng rng(cfg.seed);
        z = sample_local_symmetric_z(lat, rng);
    } else {
        std::vector<Site> sites;
        for (Site s : parse_sites(sites_text)) {
            sites.push_back(lat.wrap(s.x, s.y));
        }
        z = ZSupport(lat, sites);
    }
    Json input = Json::array();
    for (Site s : z.sites()) {
        input.push_back({s.x, s.y});
    }
    StarDecomposition d;
    try {
        d = reduce_to_stars(z);
    } catch (const NotSymmetric &e) {
        err << Json({{"error", "not_symmetric"}, {"message", e.what()}}).dump() << "\n";
        return EXIT_CHECK_FAILED;
    } catch (const NotLocal &e) {
        err << Json({{"error", "not_local"}, {"message", e.what()}}).dump() << "\n";
        return EXIT_CHECK_FAILED;
    }
    Json stars = Json::array();
    for (Site s : d.centers) {
        stars.push_back({s.x, s.y});
    }
    bool ok = star_product(lat, d) == z;
    emit(cfg, out,
         Json({{"n", cfg.n}, {"N", cfg.N}, {"input", input}, {"stars", stars}, {"verified", ok}}).dump(2) + "\n");
    return ok ? EXIT_OK : EXIT_CHECK_FAILED;
}

}  // namespace

int thread_cap() {
    int hw = (int)std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("CPL_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) {
            return std::min(v, hw);
        }
    }
    return hw;
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"cluster-phase MBQC toolkit", "cpl"};
    app.require_subcommand(1);
    RunConfig cfg;
    auto common = [&](CLI::App *sub) {
        sub->add_option("--n", cfg.n, "ring size (short circumference)");
        sub->add_option("--N", cfg.N, "long circumference multiplier");
        sub->add_option("--family", cfg.family, "junk family");
        sub->add_option("--theta", cfg.theta, "family parameter");
        sub->add_option("--dalpha", cfg.dalpha, "slice tilt angle");
        sub->add_option("--wire", cfg.wire, "wire blocks after each pattern (-1: automatic)");
        sub->add_option("--seed", cfg.seed, "64-bit seed");
        sub->add_option("--tol", cfg.tol, "target accuracy");
        sub->add_option("--out", cfg.out, "output path (default stdout)");
        sub->add_flag("--deterministic", cfg.deterministic, "omit wall-clock fields");
    };

    std::string suite;
    int samples = 200;
    auto *verify = app.add_subcommand("verify", "run an invariant suite");
    verify->add_option("suite", suite, "symmetries | stars | qca | tensors")->required();
    verify->add_option("--samples", samples, "random samples for the stars suite");
    common(verify);

    double theta_max = 0.3;
    double theta_step = 0.05;
    std::string format = "csv";
    auto *cal = app.add_subcommand("calibrate", "sweep resource constants over a theta grid");
    common(cal);
    cal->add_option("--theta-max", theta_max, "grid maximum");
    cal->add_option("--theta-step", theta_step, "grid step");
    cal->add_option("--format", format, "csv | json");

    RunExtras ex;
    auto *run = app.add_subcommand("run", "compile and execute a logical circuit");
    run->add_option("circuit", ex.circuit_path, "circuit JSON file")->required();
    common(run);
    run->add_option("--backend", ex.backend, "channel | trajectory");
    run->add_option("--init", ex.init, "x | z");
    run->add_option("--reps", ex.reps, "weak-measurement repetitions (-1: automatic)");
    run->add_option("--min-fidelity", ex.min_fidelity, "exit 1 below this fidelity");
    run->add_option("--program-out", ex.program_out, "write the compiled program");

    int steps = -1;
    std::string pauli;
    auto *evolve = app.add_subcommand("qca-evolve", "print the evolution of a ring Pauli, one step per line");
    common(evolve);
    evolve->add_option("--steps", steps, "number of steps (default n)");
    evolve->add_option("--pauli", pauli, "initial Pauli, e.g. Z_____");

    auto *period = app.add_subcommand("qca-period", "print the automaton period");
    common(period);

    std::string sites;
    bool random = false;
    auto *reduce = app.add_subcommand("reduce-z", "decompose a symmetric Z operator into stars");
    common(reduce);
    reduce->add_option("--sites", sites, "Z support as x,y;x,y");
    reduce->add_flag("--random", random, "sample a local symmetric operator");

    std::vector<std::string> argv_store{"cpl"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &a : argv_store) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse((int)argv.size(), argv.data());
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err) == 0 ? EXIT_OK : EXIT_USAGE;
    }

    try {
        if (cfg.N < 1) {
            throw UsageError("--N must be positive");
        }
        if (*verify) {
            if (cfg.n < 0) {
                throw UsageError("verify needs --n");
            }
            return cmd_verify(cfg, suite, samples, out);
        }
        if (*cal) {
            return cmd_calibrate(cfg, theta_max, theta_step, cal->count("--theta") > 0, format, out);
        }
        if (*run) {
            return cmd_run(cfg, ex, out);
        }
        if (*evolve) {
            return cmd_qca_evolve(cfg, steps, pauli, out);
        }
        if (*period) {
            return cmd_qca_period(cfg, out);
        }
        if (*reduce) {
            if (!random && sites.empty()) {
                throw UsageError("reduce-z needs --sites or --random");
            }
            return cmd_reduce_z(cfg, sites, random, out, err);
        }
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const CompilationInfeasible &e) {
        err << "infeasible: " << e.what() << " (error floor " << e.floor << ")\n";
        return EXIT_INFEASIBLE;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return EXIT_CHECK_FAILED;
    }
    return EXIT_USAGE;
}

}  // namespace cpl
