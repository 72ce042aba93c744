#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "recseq/bigindex.hpp"
#include "recseq/field.hpp"
#include "recseq/sampling.hpp"
#include "recseq/selftest.hpp"
#include "recseq/seqterm.hpp"

namespace {

using recseq::BigIndex;
using recseq::DensePoly;
using recseq::FieldCtx;
using recseq::Fp;
using recseq::u64;

struct JobSpec {
    std::string modulus;
    std::vector<std::string> coeffs;
    std::vector<std::string> init;
    std::string index;
    std::string algo = "auto";
    u64 seed = 0;
};

// Every validation problem exits 2 with a message that names the offending
// field; a thrown Validation carries that message up to the dispatcher.
struct Validation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

u64 mix(u64 seed, u64 salt) { return seed * 0x9e3779b97f4a7c15ull + salt; }

BigIndex parse_decimal(const std::string& field, const std::string& s) {
    try {
        return BigIndex::from_decimal(s);
    } catch (const recseq::Error&) {
        throw Validation(field + ": not a nonnegative decimal integer: '" + s + "'");
    }
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

JobSpec job_from_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Validation("input: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Validation(std::string("input: invalid JSON: ") + e.what());
    }
    JobSpec js;
    try {
        js.modulus = j.at("modulus").get<std::string>();
        js.coeffs = j.at("coeffs").get<std::vector<std::string>>();
        js.init = j.at("init").get<std::vector<std::string>>();
        js.index = j.at("index").get<std::string>();
        js.algo = j.value("algo", std::string("auto"));
        js.seed = j.value("seed", u64(0));
    } catch (const std::exception& e) {
        throw Validation(std::string("input: ") + e.what());
    }
    return js;
}

std::vector<Fp> parse_values(const FieldCtx& F, const std::string& field,
                             const std::vector<std::string>& raw, const BigIndex& modulus) {
    std::vector<Fp> out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const std::string slot = field + "[" + std::to_string(i) + "]";
        BigIndex v = parse_decimal(slot, raw[i]);
        if (!(v < modulus)) throw Validation(slot + ": value must be less than modulus");
        out.push_back(F.from_u64(v.is_zero() ? 0 : v.to_u64()));
    }
    return out;
}

struct NthOutcome {
    Fp value;
    recseq::Algo algo;
};

int run_nth(const JobSpec& js, bool verbose) {
    BigIndex pbig = parse_decimal("modulus", js.modulus);
    if (!pbig.fits_u64()) throw Validation("modulus: too large (need a prime below 2^62)");
    std::optional<FieldCtx> Fopt;
    try {
        Fopt.emplace(pbig.is_zero() ? 0 : pbig.to_u64());
    } catch (const recseq::Error& e) {
        throw Validation(std::string("modulus: ") + e.what());
    }
    FieldCtx& F = *Fopt;
    if (js.coeffs.empty()) throw Validation("coeffs: need at least one coefficient");
    if (js.coeffs.size() != js.init.size())
        throw Validation("init: need exactly as many values as coeffs");
    std::vector<Fp> coeffs = parse_values(F, "coeffs", js.coeffs, pbig);
    std::vector<Fp> init = parse_values(F, "init", js.init, pbig);
    BigIndex D = parse_decimal("index", js.index);
    if (js.algo != "auto" && js.algo != "naive" && js.algo != "fiduccia" && js.algo != "factored")
        throw Validation("algo: must be one of auto, naive, fiduccia, factored");

    recseq::Recurrence rec(F, std::move(coeffs), std::move(init));
    std::mt19937_64 rng(js.seed);
    F.enable_counting(true);
    const auto t0 = std::chrono::steady_clock::now();
    NthOutcome out{};
    if (js.algo == "auto") {
        recseq::AutoResult ar = recseq::nth_term_auto(rec, D, rng);
        out = {ar.value, ar.algo};
    } else if (js.algo == "naive") {
        out = {recseq::nth_term_naive(rec, D), recseq::Algo::naive};
    } else if (js.algo == "fiduccia") {
        out = {recseq::nth_term_fiduccia(rec, D), recseq::Algo::fiduccia};
    } else {
        out = {recseq::nth_term_factored(rec, D, rng), recseq::Algo::factored};
    }
    const auto t1 = std::chrono::steady_clock::now();
    std::cout << out.value.v << "\n";
    if (verbose) {
        const recseq::OpCounters& c = F.counters();
        std::cerr << "algo: " << recseq::algo_name(out.algo) << "\n"
                  << "order: " << rec.order() << "\n"
                  << "field_mults: " << c.mults << "\n"
                  << "field_adds: " << c.adds << "\n"
                  << "field_invs: " << c.invs << "\n"
                  << "wall_ns: "
                  << std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count() << "\n";
    }
    return 0;
}

struct BenchConfig {
    std::string prime;
    std::vector<std::size_t> fs{2};
    std::vector<std::size_t> ms{256};
    std::vector<unsigned> bits{62};
    std::string algos = "fiduccia,factored";
    unsigned reps = 1;
    u64 seed = 0;
    std::string csv = "-";
};

recseq::Algo parse_bench_algo(const std::string& s) {
    if (s == "naive") return recseq::Algo::naive;
    if (s == "fiduccia") return recseq::Algo::fiduccia;
    if (s == "factored") return recseq::Algo::factored;
    throw Validation("algos: unknown algorithm '" + s + "'");
}

int run_bench(const BenchConfig& cfg) {
    BigIndex pbig = parse_decimal("prime", cfg.prime);
    if (!pbig.fits_u64()) throw Validation("prime: too large (need a prime below 2^62)");
    std::optional<FieldCtx> Fopt;
    try {
        Fopt.emplace(pbig.is_zero() ? 0 : pbig.to_u64());
    } catch (const recseq::Error& e) {
        throw Validation(std::string("prime: ") + e.what());
    }
    FieldCtx& F = *Fopt;
    if (cfg.reps < 1) throw Validation("reps: must be at least 1");
    std::vector<recseq::Algo> algos;
    for (const std::string& s : split_list(cfg.algos)) algos.push_back(parse_bench_algo(s));
    if (algos.empty()) throw Validation("algos: need at least one algorithm");

    struct Case {
        std::size_t f, m;
        unsigned bits;
    };
    std::vector<Case> cases;
    for (std::size_t f : cfg.fs)
        for (std::size_t m : cfg.ms)
            for (unsigned b : cfg.bits) {
                if (f < 1) throw Validation("f: degree must be at least 1");
                if (m < 1) throw Validation("m: multiplicity must be at least 1");
                const std::size_t d = f * m;
                if (F.modulus() <= d)
                    throw Validation("f/m: need prime > f*m for the factored path");
                BigIndex D = BigIndex::from_limbs([&] {
                    std::vector<u64> limbs(b / 64 + 1, 0);
                    limbs[b / 64] = u64(1) << (b % 64);
                    return limbs;
                }());
                for (recseq::Algo a : algos)
                    if (a == recseq::Algo::factored && D < BigIndex(2 * u64(d)))
                        throw Validation("index-bits: factored path needs 2^bits >= 2*f*m");
                cases.push_back({f, m, b});
            }

    std::ostringstream body;
    body << "algo,p,d,f,m,index_bits,field_mults,field_invs,wall_ns,result\n";
    for (std::size_t ci = 0; ci < cases.size(); ++ci) {
        const Case& cs = cases[ci];
        std::mt19937_64 shape_rng(mix(cfg.seed, ci * 2 + 1));
        DensePoly Q = recseq::sample_factor_base(F, static_cast<long>(cs.f), shape_rng);
        DensePoly P = recseq::p_pow_expand(Q, static_cast<unsigned>(cs.m));
        const std::size_t d = cs.f * cs.m;
        std::vector<Fp> coeffs(d);
        for (std::size_t j = 0; j < d; ++j) coeffs[j] = F.neg(P.coeff(j));
        recseq::Recurrence rec(F, std::move(coeffs), recseq::sample_values(F, d, shape_rng));
        BigIndex D = BigIndex::from_limbs([&] {
            std::vector<u64> limbs(cs.bits / 64 + 1, 0);
            limbs[cs.bits / 64] = u64(1) << (cs.bits % 64);
            return limbs;
        }());

        std::optional<Fp> case_result;
        for (recseq::Algo algo : algos) {
            recseq::OpCounters tally{};
            Fp value{};
            std::uint64_t best_ns = ~std::uint64_t(0);
            for (unsigned rep = 0; rep < cfg.reps; ++rep) {
                std::mt19937_64 rng(mix(cfg.seed, ci * 2 + 2)); // same draw every rep
                F.enable_counting(true);
                F.reset_counters();
                const auto t0 = std::chrono::steady_clock::now();
                Fp v;
                switch (algo) {
                case recseq::Algo::naive: v = recseq::nth_term_naive(rec, D); break;
                case recseq::Algo::fiduccia: v = recseq::nth_term_fiduccia(rec, D); break;
                default: v = recseq::nth_term_factored(rec, D, rng); break;
                }
                const auto t1 = std::chrono::steady_clock::now();
                const auto ns = static_cast<std::uint64_t>(
                    std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
                if (rep == 0) {
                    tally = F.counters();
                    value = v;
                } else if (!(value == v)) {
                    throw Validation("internal: repetitions disagree within one case");
                }
                best_ns = std::min(best_ns, ns);
            }
            if (case_result && !(*case_result == value))
                throw Validation("internal: algorithms disagree within one case");
            case_result = value;
            body << recseq::algo_name(algo) << ',' << F.modulus() << ',' << d << ',' << cs.f << ','
                 << cs.m << ',' << cs.bits << ',' << tally.mults << ',' << tally.invs << ','
                 << best_ns << ',' << value.v << "\n";
        }
    }

    if (cfg.csv == "-") {
        std::cout << body.str();
    } else {
        std::ofstream out(cfg.csv, std::ios::binary); // LF endings everywhere
        if (!out) throw Validation("csv: cannot open '" + cfg.csv + "' for writing");
        out << body.str();
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"terms of linear recurrences over prime fields"};
    app.require_subcommand(1);

    JobSpec js;
    std::string coeffs_flag, init_flag, input_path;
    bool verbose = false;
    CLI::App* nth = app.add_subcommand("nth", "compute the D-th term of a recurrence");
    auto* o_mod = nth->add_option("--modulus,-p", js.modulus, "prime modulus (decimal)");
    auto* o_coe = nth->add_option("--coeffs", coeffs_flag, "comma-separated recurrence coefficients");
    auto* o_ini = nth->add_option("--init", init_flag, "comma-separated initial values");
    auto* o_idx = nth->add_option("--index,-D", js.index, "term index (decimal, any size)");
    auto* o_alg = nth->add_option("--algo", js.algo, "auto|naive|fiduccia|factored")
                      ->default_val("auto");
    auto* o_seed = nth->add_option("--seed", js.seed, "seed for the randomized path");
    auto* o_inp = nth->add_option("--input", input_path, "JSON job file instead of flags");
    nth->add_flag("--verbose,-v", verbose, "report algorithm and counters on stderr");
    o_inp->excludes(o_mod)->excludes(o_coe)->excludes(o_ini)->excludes(o_idx)->excludes(o_alg)
        ->excludes(o_seed);

    BenchConfig bc;
    CLI::App* bench = app.add_subcommand("bench", "run the benchmark matrix, CSV output");
    bench->add_option("--prime", bc.prime, "prime modulus (decimal)")->required();
    bench->add_option("--f", bc.fs, "degrees of the squarefree part (list)")->delimiter(',');
    bench->add_option("--m", bc.ms, "multiplicities (list)")->delimiter(',');
    bench->add_option("--index-bits", bc.bits, "index exponents: D = 2^bits (list)")->delimiter(',');
    bench->add_option("--algos", bc.algos, "comma-separated algorithms to run");
    bench->add_option("--reps", bc.reps, "repetitions per case (wall time takes the minimum)");
    bench->add_option("--seed", bc.seed, "seed for shape and projection sampling");
    bench->add_option("--csv", bc.csv, "output path ('-' for standard output)");

    u64 st_seed = 0;
    CLI::App* selftest = app.add_subcommand("selftest", "run the property suites");
    selftest->add_option("--seed", st_seed, "seed for the randomized suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (nth->parsed()) {
            if (!input_path.empty()) {
                js = job_from_json(input_path);
            } else {
                if (js.modulus.empty()) throw Validation("modulus: required");
                if (coeffs_flag.empty()) throw Validation("coeffs: required");
                if (init_flag.empty()) throw Validation("init: required");
                if (js.index.empty()) throw Validation("index: required");
                js.coeffs = split_list(coeffs_flag);
                js.init = split_list(init_flag);
            }
            return run_nth(js, verbose);
        }
        if (bench->parsed()) return run_bench(bc);
        return recseq::run_selftest(st_seed, std::cout);
    } catch (const Validation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const recseq::Error& e) {
        if (e.code() == recseq::errc::fast_path_unavailable) {
            std::cerr << "error: " << e.what() << "\n";
            return 3;
        }
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
