#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "mpg/generate.hpp"
#include "mpg/report.hpp"

namespace {

using namespace mpg;
using ojson = nlohmann::ordered_json;

// Exit codes: 0 success, 1 solve/check failed honestly, 2 input error,
// 3 resource cap exceeded, 4 internal invariant violation.
constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;
constexpr int kExitInternal = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

MinPolicy parse_sigma0(const std::string& text) {
    MinPolicy sigma;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        sigma.choice.push_back(std::stoi(tok));
    return sigma;
}

struct Input {
    InputKind kind;
    Game game;      // encoded when kind == Det
    DetGame det;
};

Input load_input(const std::string& path) {
    const std::string text = read_file(path);
    Input in;
    in.kind = detect_input_kind(text);
    if (in.kind == InputKind::Game) {
        in.game = parse_game(text);
    } else {
        in.det = parse_det_game(text);
        in.game = encode_deterministic(in.det);
    }
    return in;
}

SolveReport direct_pi_report(const Game& g, const MinPolicy& sigma0, const SolveOptions& opts) {
    HkOptions hk_opts;
    hk_opts.iteration_cap = opts.iteration_cap;
    const HkOutcome hk = hoffman_karp(g, sigma0, hk_opts);
    SolveReport rep;
    rep.sigma_star = hk.sigma;
    rep.tau_star = hk.tau;
    rep.chibar = lambda_sigma(g, hk.sigma, zero_vector(g.n), opts.limits).value;
    if (rep.chibar != hk.pair.lambda)
        throw InternalError("terminal policy value differs from the converged eigenvalue");
    rep.perturbed_eigenpair = hk.pair;
    rep.trace = hk.trace;
    rep.method = "pi";
    return rep;
}

int cmd_solve(const std::string& file, const std::string& method, const std::string& sigma0_text,
              long long cap, long long iter_cap, const std::string& format, bool verify) {
    const Input in = load_input(file);
    SolveOptions opts;
    opts.limits.pair_cap = cap;
    if (iter_cap > 0) opts.iteration_cap = iter_cap;
    if (!sigma0_text.empty()) opts.sigma0 = parse_sigma0(sigma0_text);
    opts.verify_with_oracle = verify;

    if (method == "oracle") {
        const OracleReport rep = brute_chibar(in.game, opts.limits);
        std::cout << (format == "text" ? oracle_report_text(rep) : oracle_report_json(rep));
        return kExitOk;
    }

    SolveReport rep;
    const MinPolicy sigma0 = opts.sigma0.value_or(least_index_min_policy(in.game));
    if (method == "pi") {
        rep = direct_pi_report(in.game, sigma0, opts);
        if (verify && brute_chibar(in.game, opts.limits).chibar != rep.chibar)
            throw InternalError("policy iteration result disagrees with the brute-force value");
    } else if (method == "perturbed") {
        rep = in.kind == InputKind::Det ? solve_deterministic(in.det, opts)
                                        : solve_perturbed(in.game, opts);
    } else {  // auto: direct policy iteration, perturbed on degeneracy
        try {
            rep = direct_pi_report(in.game, sigma0, opts);
            if (verify && brute_chibar(in.game, opts.limits).chibar != rep.chibar)
                throw InternalError("policy iteration result disagrees with the brute-force value");
        } catch (const NonConstantGainError&) {
            rep = in.kind == InputKind::Det ? solve_deterministic(in.det, opts)
                                            : solve_perturbed(in.game, opts);
        } catch (const CycleDetectedError&) {
            rep = in.kind == InputKind::Det ? solve_deterministic(in.det, opts)
                                            : solve_perturbed(in.game, opts);
        }
    }
    std::cout << (format == "text" ? solve_report_text(rep) : solve_report_json(rep));
    return kExitOk;
}

int cmd_oracle(const std::string& file, long long cap, const std::string& format) {
    const Input in = load_input(file);
    EnumLimits limits;
    limits.pair_cap = cap;
    const OracleReport rep = brute_chibar(in.game, limits);
    std::cout << (format == "text" ? oracle_report_text(rep) : oracle_report_json(rep));
    return kExitOk;
}

RatVector parse_vector_file(const std::string& path, int n) {
    const std::string text = read_file(path);
    std::vector<Rat> vals;
    if (auto first = text.find_first_not_of(" \t\r\n"); first != std::string::npos &&
        text[first] == '[') {
        const ojson doc = ojson::parse(text);
        for (const auto& e : doc) vals.push_back(parse_rat(e.get<std::string>()));
    } else {
        std::stringstream ss(text);
        std::string tok;
        while (ss >> tok) vals.push_back(parse_rat(tok));
    }
    if (static_cast<int>(vals.size()) != n)
        throw ParseError(path, "expected " + std::to_string(n) + " entries, found " +
                                   std::to_string(vals.size()));
    RatVector v(n);
    for (int i = 0; i < n; ++i) v(i) = vals[i];
    return v;
}

int cmd_check(const std::string& file, const std::string& lambda_text, const std::string& u_file) {
    const Input in = load_input(file);
    const Rat lambda = parse_rat(lambda_text);
    const RatVector u = parse_vector_file(u_file, in.game.n);
    const RatVector lhs = eval_T(in.game, u);
    for (int i = 0; i < in.game.n; ++i) {
        const Rat rhs = lambda + u(i);
        if (lhs(i) != rhs) {
            std::cout << "mismatch at coordinate " << i << ": T(u)[" << i << "] = "
                      << to_string(lhs(i)) << ", lambda + u[" << i << "] = " << to_string(rhs)
                      << "\n";
            return kExitFailed;
        }
    }
    std::cout << "ok: T(u) = lambda e + u holds exactly\n";
    return kExitOk;
}

struct GridSpec {
    Rat lo, step, hi;
};

GridSpec parse_grid(const std::string& text) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? 0 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ParseError(text, "grid must be LO:STEP:HI");
    GridSpec g;
    g.lo = parse_rat(text.substr(0, c1));
    g.step = parse_rat(text.substr(c1 + 1, c2 - c1 - 1));
    g.hi = parse_rat(text.substr(c2 + 1));
    if (g.step.sign() <= 0) throw ParseError(text, "grid step must be positive");
    return g;
}

std::vector<Rat> grid_points(const GridSpec& g) {
    std::vector<Rat> pts;
    for (Rat v = g.lo; v <= g.hi; v += g.step) pts.push_back(v);
    return pts;
}

int cmd_map(const std::string& file, std::string plane_text, const std::string& grid_text,
            const std::string& fix_text, long long cap) {
    const Input in = load_input(file);
    const Game& g = in.game;
    EnumLimits limits;
    limits.pair_cap = cap;

    std::vector<int> plane;
    if (plane_text.empty()) plane_text = (g.n == 1) ? "0" : "0,1";
    {
        std::stringstream ss(plane_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) plane.push_back(std::stoi(tok));
    }
    if (plane.size() < 1 || plane.size() > 2)
        throw ParseError(plane_text, "plane needs one or two state indices");
    for (int idx : plane)
        if (idx < 0 || idx >= g.n) throw ParseError(plane_text, "plane index out of range");
    if (plane.size() == 2 && plane[0] == plane[1])
        throw ParseError(plane_text, "plane indices must differ");

    RatVector shift = zero_vector(g.n);
    if (!fix_text.empty()) {
        std::stringstream ss(fix_text);
        std::string item;
        while (std::getline(ss, item, ';')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw ParseError(fix_text, "fix items must be INDEX=VALUE");
            const int idx = std::stoi(item.substr(0, eq));
            if (idx < 0 || idx >= g.n) throw ParseError(fix_text, "fix index out of range");
            shift(idx) = parse_rat(item.substr(eq + 1));
        }
    }

    // All Min policies, odometer order over ascending states.
    std::vector<MinPolicy> sigmas;
    {
        BigInt count(1);
        for (int i = 0; i < g.n; ++i) count *= g.min_count(i);
        if (count > limits.pair_cap)
            throw EnumerationTooLarge("policy space needs " + count.str() + " columns");
        std::vector<int> cur(g.n, 0);
        while (true) {
            sigmas.push_back(MinPolicy{cur});
            int i = 0;
            for (; i < g.n; ++i) {
                if (++cur[i] < g.min_count(i)) break;
                cur[i] = 0;
            }
            if (i == g.n) break;
        }
    }

    // Header: coordinates, one certificate column per policy, value, verdict.
    std::ostringstream header;
    for (int idx : plane) header << "g" << idx << ",";
    for (size_t s = 0; s < sigmas.size(); ++s) header << "cert_sigma_" << s << ",";
    header << "lambda,verdict";
    std::cout << header.str() << "\n";

    const GridSpec grid = parse_grid(grid_text);
    const std::vector<Rat> axis = grid_points(grid);
    const std::vector<Rat> axis_y = plane.size() == 2 ? axis : std::vector<Rat>{Rat(0)};

    try {
        for (const Rat& y : axis_y) {
            for (const Rat& x : axis) {
                RatVector point = shift;
                point(plane[0]) = x;
                if (plane.size() == 2) point(plane[1]) = y;

                std::ostringstream row;
                row << to_string(x);
                if (plane.size() == 2) row << "," << to_string(y);
                bool all_unique = true;
                for (const MinPolicy& sigma : sigmas) {
                    const CertificateResult cert = unique_bias_certificate(g, sigma, point, limits);
                    const bool uniq = cert.verdict == Certificate::Unique;
                    all_unique = all_unique && uniq;
                    row << "," << (uniq ? "U" : "I");
                }
                const OracleReport rep = brute_chibar(shift_payments(g, point), limits);
                bool constant = true;
                for (int i = 1; i < g.n; ++i) constant = constant && rep.chi(i) == rep.chi(0);
                row << "," << (constant ? to_string(rep.chibar) : std::string("none"));
                row << "," << (all_unique ? "unique" : "inconclusive");
                std::cout << row.str() << "\n";
            }
        }
    } catch (const EnumerationTooLarge& e) {
        // Partial CSV already flushed row by row.
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    }
    return kExitOk;
}

struct BenchRow {
    int idx = 0;
    int n = 0;
    std::string oracle_chibar;
    std::string pi_outcome;  // ok | cycle | nonconstant_gain | iteration_cap
    bool pi_match = false;
    bool pert_match = false;
    size_t pi_iters = 0;
    size_t pert_iters = 0;
    unsigned long max_bits = 0;
};

int cmd_bench(std::uint64_t seed, int count, bool det_mode, bool degenerate, int n_max,
              int actions_max, int den_bound, long long cap, const std::string& format) {
    Rng rng(seed);
    EnumLimits limits;
    limits.pair_cap = cap;

    std::vector<BenchRow> rows;
    int pi_ok = 0, pi_cycle = 0, pi_nonconst = 0, pi_agree = 0, pert_agree = 0;
    unsigned long max_bits = 0;

    for (int idx = 0; idx < count; ++idx) {
        BenchRow row;
        row.idx = idx;

        Game game;
        DetGame dg;
        if (det_mode) {
            DetGenParams p;
            p.n_max = n_max;
            p.m_max = n_max;
            p.entry_bound = den_bound > 2 ? den_bound : 10;
            p.tie_payments = degenerate && rng.chance(1, 2);
            dg = random_det_game(rng, p);
            game = encode_deterministic(dg);
        } else {
            GameGenParams p;
            p.n_max = n_max;
            p.max_min_actions = actions_max;
            p.max_max_actions = actions_max;
            p.den_bound = den_bound;
            if (degenerate) {
                p.duplicate_actions = rng.chance(1, 2);
                p.tie_payments = rng.chance(1, 2);
                p.force_reducible = rng.chance(2, 3);
            }
            game = random_game(rng, p);
        }
        row.n = game.n;

        const OracleReport oracle = brute_chibar(game, limits);
        row.oracle_chibar = to_string(oracle.chibar);

        try {
            const HkOutcome hk = hoffman_karp(game, least_index_min_policy(game));
            row.pi_outcome = "ok";
            row.pi_iters = hk.trace.size();
            row.pi_match = verify_eigenpair(game, hk.pair.lambda, hk.pair.u) &&
                           hk.pair.lambda == oracle.chibar;
            ++pi_ok;
            if (row.pi_match) ++pi_agree;
        } catch (const CycleDetectedError&) {
            row.pi_outcome = "cycle";
            ++pi_cycle;
        } catch (const NonConstantGainError&) {
            row.pi_outcome = "nonconstant_gain";
            ++pi_nonconst;
        } catch (const IterationCapError&) {
            row.pi_outcome = "iteration_cap";
        }

        SolveOptions sopts;
        sopts.limits = limits;
        const SolveReport pert = det_mode ? solve_deterministic(dg, sopts)
                                          : solve_perturbed(game, sopts);
        row.pert_iters = pert.trace.size();
        row.pert_match = pert.chibar == oracle.chibar;
        if (row.pert_match) ++pert_agree;
        row.max_bits = report_bit_length(pert);
        max_bits = std::max(max_bits, row.max_bits);

        rows.push_back(std::move(row));
    }

    if (format == "csv") {
        std::cout << "idx,n,oracle_chibar,pi_outcome,pi_match,pert_match,pi_iters,pert_iters,"
                     "max_bits\n";
        for (const auto& r : rows)
            std::cout << r.idx << "," << r.n << "," << r.oracle_chibar << "," << r.pi_outcome
                      << "," << (r.pi_match ? 1 : 0) << "," << (r.pert_match ? 1 : 0) << ","
                      << r.pi_iters << "," << r.pert_iters << "," << r.max_bits << "\n";
    } else if (format == "json") {
        ojson doc;
        doc["schema"] = 1;
        doc["kind"] = "bench";
        doc["seed"] = seed;
        doc["count"] = count;
        doc["pi_ok"] = pi_ok;
        doc["pi_cycle"] = pi_cycle;
        doc["pi_nonconstant_gain"] = pi_nonconst;
        doc["pi_agree"] = pi_agree;
        doc["perturbed_agree"] = pert_agree;
        doc["max_coefficient_bits"] = max_bits;
        ojson games = ojson::array();
        for (const auto& r : rows) {
            ojson jr;
            jr["idx"] = r.idx;
            jr["n"] = r.n;
            jr["oracle_chibar"] = r.oracle_chibar;
            jr["pi_outcome"] = r.pi_outcome;
            jr["pi_match"] = r.pi_match;
            jr["pert_match"] = r.pert_match;
            jr["pi_iters"] = r.pi_iters;
            jr["pert_iters"] = r.pert_iters;
            jr["max_bits"] = r.max_bits;
            games.push_back(std::move(jr));
        }
        doc["games"] = std::move(games);
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "bench: seed=" << seed << " count=" << count
                  << (det_mode ? " (deterministic games)" : "")
                  << (degenerate ? " (degeneracy injectors on)" : "") << "\n";
        std::cout << "  direct policy iteration: ok=" << pi_ok << " cycle=" << pi_cycle
                  << " nonconstant_gain=" << pi_nonconst << "\n";
        std::cout << "  direct agreement with oracle (when it terminated): " << pi_agree << "/"
                  << pi_ok << "\n";
        std::cout << "  perturbed agreement with oracle: " << pert_agree << "/" << count << "\n";
        std::cout << "  max coefficient bit length: " << max_bits << "\n";
    }
    const bool all_pert = pert_agree == count;
    const bool all_pi = pi_agree == pi_ok;
    return (all_pert && all_pi) ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact mean-payoff solver for finite stochastic games"};
    app.require_subcommand(1);

    std::string file, method = "auto", sigma0, format = "json";
    long long cap = 1'000'000, iter_cap = 0;
    bool verify = false;

    auto* solve = app.add_subcommand("solve", "solve a game for its upper mean payoff");
    solve->add_option("file", file)->required();
    solve->add_option("--method", method)->check(CLI::IsMember({"auto", "pi", "perturbed", "oracle"}));
    solve->add_option("--sigma0", sigma0, "initial Min policy, comma-separated action indices");
    solve->add_option("--cap", cap, "enumeration cap");
    solve->add_option("--iteration-cap", iter_cap, "outer policy-iteration cap");
    solve->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    solve->add_flag("--verify", verify, "cross-check against the brute-force value");

    auto* oracle = app.add_subcommand("oracle", "brute-force value by full enumeration");
    oracle->add_option("file", file)->required();
    oracle->add_option("--cap", cap, "enumeration cap");
    oracle->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    std::string lambda_text, u_file;
    auto* check = app.add_subcommand("check", "verify a proposed solution of T(u) = lambda e + u");
    check->add_option("file", file)->required();
    check->add_option("--lambda", lambda_text)->required();
    check->add_option("--u", u_file, "file with the candidate vector")->required();

    std::string plane, grid = "-5:1/2:5", fix;
    auto* map = app.add_subcommand("map", "sample bias-uniqueness certificates over a payment slice");
    map->add_option("file", file)->required();
    map->add_option("--plane", plane, "one or two state indices, comma-separated");
    map->add_option("--grid", grid, "LO:STEP:HI with rational bounds");
    map->add_option("--fix", fix, "fixed coordinates, INDEX=VALUE;INDEX=VALUE");
    map->add_option("--cap", cap, "enumeration cap");

    std::uint64_t seed = 1;
    int count = 200, n_max = 4, actions_max = 3, den_bound = 4;
    bool det_mode = false, degenerate = false;
    auto* bench = app.add_subcommand("bench", "random-instance agreement harness");
    bench->add_option("--seed", seed);
    bench->add_option("--count", count);
    bench->add_option("--nmax", n_max);
    bench->add_option("--actions", actions_max, "max action-set size per player");
    bench->add_option("--den", den_bound, "denominator bound (entry bound for --det)");
    bench->add_flag("--det", det_mode, "deterministic bipartite instances");
    bench->add_flag("--degenerate", degenerate, "enable degeneracy injectors");
    bench->add_option("--cap", cap, "enumeration cap");
    bench->add_option("--format", format)->check(CLI::IsMember({"json", "text", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (solve->parsed()) return cmd_solve(file, method, sigma0, cap, iter_cap, format, verify);
        if (oracle->parsed()) return cmd_oracle(file, cap, format);
        if (check->parsed()) return cmd_check(file, lambda_text, u_file);
        if (map->parsed()) return cmd_map(file, plane, grid, fix, cap);
        if (bench->parsed())
            return cmd_bench(seed, count, det_mode, degenerate, n_max, actions_max, den_bound, cap,
                             format);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const InvariantViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const DivisionByZero& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const EnumerationTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const IterationCapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const CycleDetectedError& e) {
        std::cerr << "error: " << e.what() << " (use --method perturbed)\n";
        return kExitFailed;
    } catch (const NonConstantGainError& e) {
        std::cerr << "error: " << e.what() << " (use --method perturbed)\n";
        return kExitFailed;
    } catch (const InternalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}
