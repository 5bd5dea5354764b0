#include "cli.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "altsum/cf.hpp"
#include "altsum/discrepancy.hpp"
#include "altsum/errors.hpp"
#include "altsum/ostrowski.hpp"
#include "altsum/realnum.hpp"
#include "altsum/sums.hpp"

#ifndef ALTSUM_DATA_DIR
#define ALTSUM_DATA_DIR "data"
#endif

namespace altsum_cli {

namespace {

using namespace altsum;

struct MethodMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string int_str(const Int& v) { return v.str(); }

std::string rat_str(const Rat& v) {
    if (denominator(v) == 1) return numerator(v).str();
    return numerator(v).str() + "/" + denominator(v).str();
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

// Display-only decimal logarithm of a positive integer; never in a verdict.
double log10_int(const Int& v) { return std::log10(v.convert_to<double>()); }

Int parse_int_arg(const std::string& s, const char* opt) {
    try {
        return Int(s);
    } catch (const std::exception&) {
        throw ParseError(std::string(opt) + ": '" + s + "' is not an integer");
    }
}

std::uint64_t parse_u64_arg(const std::string& s, const char* opt) {
    Int v = parse_int_arg(s, opt);
    if (v < 0 || v > Int(1'000'000'000'000ull))
        throw ParseError(std::string(opt) + ": '" + s + "' is out of range");
    return v.convert_to<std::uint64_t>();
}

AlphaSource make_alpha(const std::string& spec, std::uint64_t cap) {
    AlphaSource a = parse_alpha(spec);
    if (cap > 0) a.set_precision_cap(static_cast<std::size_t>(cap));
    return a;
}

// Writes to --out PATH when given, standard output otherwise.
struct OutSink {
    std::ofstream file;
    std::ostream* os = nullptr;
    OutSink(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            os = &fallback;
        } else {
            file.open(path);
            if (!file) throw ParseError("--out: cannot open '" + path + "' for writing");
            os = &file;
        }
    }
    std::ostream& stream() { return *os; }
};

std::string data_dir() {
    if (const char* env = std::getenv("ALTSUM_DATA_DIR"); env && *env) return env;
    return ALTSUM_DATA_DIR;
}

struct CommonCfg {
    std::string alpha;
    std::string out;
    std::string cap = "0";
};

void add_common(CLI::App* sub, CommonCfg& cfg, bool alpha_required = true) {
    auto* a = sub->add_option("--alpha", cfg.alpha, "alpha spec: \"sqrt(D)\", \"(P+sqrt(D))/Q\", "
                                                    "\"p/q\", an integer, \"[a0;a1,...]\", "
                                                    "\"[a0;c+d*k]\", or \"@path\"");
    if (alpha_required) a->required();
    sub->add_option("--out", cfg.out, "write TSV here instead of standard output");
    sub->add_option("--precision-cap", cfg.cap, "override the quotient-table index cap");
}

int run_sum(const CommonCfg& common, const std::string& n_str, const std::string& method,
            bool no_timing, std::ostream& fallback) {
    AlphaSource alpha = make_alpha(common.alpha, parse_u64_arg(common.cap, "--precision-cap"));
    Int n = parse_int_arg(n_str, "--n");
    if (n < 0) throw ParseError("--n: must be nonnegative");
    auto t0 = std::chrono::steady_clock::now();
    Int s;
    if (method == "naive") {
        s = s_naive(alpha, n);
    } else if (method == "fast") {
        s = s_fast(alpha, n);
    } else {
        Int a = s_naive(alpha, n);
        Int b = s_fast(alpha, n);
        if (a != b)
            throw MethodMismatch("sum: methods disagree at N=" + n.str() + ": naive=" + a.str() +
                                 " fast=" + b.str());
        s = a;
    }
    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    OutSink sink(common.out, fallback);
    std::ostream& out = sink.stream();
    if (no_timing) {
        out << "# n\ts_n\tmethod\n";
        out << int_str(n) << '\t' << int_str(s) << '\t' << method << '\n';
    } else {
        out << "# n\ts_n\tmethod\telapsed_ms\n";
        out << int_str(n) << '\t' << int_str(s) << '\t' << method << '\t' << fixed3(ms) << '\n';
    }
    return 0;
}

int run_series(const CommonCfg& common, const std::string& to_str, std::ostream& fallback) {
    AlphaSource alpha = make_alpha(common.alpha, parse_u64_arg(common.cap, "--precision-cap"));
    std::uint64_t to = parse_u64_arg(to_str, "--to");
    OutSink sink(common.out, fallback);
    std::ostream& out = sink.stream();
    out << "# n\ts_n\n";
    out << "0\t0\n";
    SumSeries ser(alpha, to);
    SeriesPoint pt{0, 0};
    while (ser.next(pt)) out << pt.n << '\t' << pt.s << '\n';
    const SeriesStats& st = ser.stats();
    out << "# min_s\t" << st.min_s << "\targmin\t" << st.argmin << "\tmax_s\t" << st.max_s
        << "\targmax\t" << st.argmax << '\n';
    return 0;
}

std::vector<Int> parse_digit_list(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') s.push_back(c);
    std::vector<Int> msf;
    if (s.empty()) return msf;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        std::string piece =
            s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        msf.push_back(parse_int_arg(piece, "--validate"));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return msf;
}

int run_cfe(const CommonCfg& common, const std::string& n_str, const std::string& validate,
            bool validate_given, std::ostream& fallback) {
    AlphaSource alpha = make_alpha(common.alpha, parse_u64_arg(common.cap, "--precision-cap"));
    OutSink sink(common.out, fallback);
    std::ostream& out = sink.stream();
    if (validate_given) {
        std::vector<Int> msf = parse_digit_list(validate);
        std::vector<Int> z(msf.rbegin(), msf.rend());
        CfeValidation v = cfe_validate(alpha, z);
        CfeDigits d{alpha, z};
        out << "# digits\tvalid\trule\tindex\tvalue\n";
        out << validate << '\t' << (v.valid ? "valid" : "invalid") << '\t'
            << (v.valid ? "-" : v.rule) << '\t';
        if (v.valid)
            out << '-';
        else
            out << v.index;
        out << '\t' << int_str(cfe_decode(d)) << '\n';
        return 0;
    }
    if (n_str.empty()) throw ParseError("cfe: --n is required unless --validate is given");
    Int n = parse_int_arg(n_str, "--n");
    if (n < 0) throw ParseError("--n: must be nonnegative");
    CfeDigits d = cfe_encode(alpha, n);
    out << "# digits (Z_I,...,Z_0) for n=" << int_str(n) << '\n';
    out << cfe_to_string(d) << '\n';
    return 0;
}

int run_records(const CommonCfg& common, long long k_min, long long k_max,
                const std::string& n_max_str, const std::string& method, std::ostream& fallback) {
    AlphaSource alpha = make_alpha(common.alpha, parse_u64_arg(common.cap, "--precision-cap"));
    if (k_min > k_max) throw ParseError("--k-min must not exceed --k-max");
    std::uint64_t n_max = parse_u64_arg(n_max_str, "--n-max");
    std::map<long long, Int> rows;
    if (method == "closed") {
        for (long long k = k_min; k <= k_max; ++k)
            if (k != 0) rows.emplace(k, record_closed(alpha, k).r);
    } else if (method == "search") {
        for (const RecordEntry& e : record_search(alpha, k_min, k_max, n_max))
            rows.emplace(e.k, e.r);
    } else {  // both: cross-check closed form against the series scan
        std::map<long long, Int> searched;
        for (const RecordEntry& e : record_search(alpha, k_min, k_max, n_max))
            searched.emplace(e.k, e.r);
        for (long long k = k_min; k <= k_max; ++k) {
            if (k == 0) continue;
            Int closed = record_closed(alpha, k).r;
            auto it = searched.find(k);
            if (it == searched.end()) {
                if (closed <= Int(n_max))
                    throw MethodMismatch("records: search missed k=" + std::to_string(k) +
                                         " below --n-max while the closed form gives " +
                                         closed.str());
            } else if (it->second != closed) {
                throw MethodMismatch("records: k=" + std::to_string(k) + ": closed form " +
                                     closed.str() + " vs search " + it->second.str());
            }
            rows.emplace(k, closed);
        }
    }
    OutSink sink(common.out, fallback);
    std::ostream& out = sink.stream();
    out << "# k\tr_k\tlog10_r_k\n";
    for (const auto& [k, r] : rows)
        out << k << '\t' << int_str(r) << '\t' << fixed6(log10_int(r)) << '\n';
    return 0;
}

int run_discrepancy(const CommonCfg& common, const std::string& n_str, std::ostream& fallback) {
    AlphaSource alpha = make_alpha(common.alpha, parse_u64_arg(common.cap, "--precision-cap"));
    std::uint64_t n = parse_u64_arg(n_str, "--n");
    if (n < 1) throw ParseError("--n: must be positive");
    PointSet ps = PointSet::halves_of_multiples(alpha, n);
    Rat lhs = Rat(Int(2 * n)) * d_at_point(ps, Rat(1, 2));
    Int s = s_naive(alpha, Int(n));
    Int as = abs(s);
    bool equal = lhs == Rat(as);
    OutSink sink(common.out, fallback);
    std::ostream& out = sink.stream();
    out << "# two_n_d_half\tabs_s_n\tverdict\n";
    out << rat_str(lhs) << '\t' << int_str(as) << '\t' << (equal ? "equal" : "unequal") << '\n';
    return equal ? 0 : 1;
}

// Deterministic rational sample in [0, bound): fixed-seed engine shared by a
// whole verify run.
Rat sample_x(std::mt19937_64& rng, std::uint64_t num_bound) {
    std::uniform_int_distribution<std::uint64_t> num(0, num_bound - 1);
    std::uniform_int_distribution<std::uint64_t> den(1, 997);
    return Rat(Int(num(rng)), Int(den(rng)));
}

int run_verify(const CommonCfg& common, const std::string& suite, const std::string& to_str,
               std::ostream& fallback) {
    AlphaSource alpha = make_alpha(common.alpha, parse_u64_arg(common.cap, "--precision-cap"));
    std::uint64_t to = parse_u64_arg(to_str, "--to");
    OutSink sink(common.out, fallback);
    std::ostream& out = sink.stream();
    out << "# suite\titem\tresult\n";
    bool all_pass = true;
    auto report = [&](const char* sname, const char* item, const char* result) {
        out << sname << '\t' << item << '\t' << result << '\n';
        if (std::string(result) == "fail") all_pass = false;
    };

    std::mt19937_64 rng(0x5eed5eedULL);

    if (suite == "ideas" || suite == "all") {
        // Idea 1: the paired renormalized sums always land on +-1/2.
        if (alpha.kind() == AlphaSource::Kind::surd &&
            alpha_compare(alpha, Rat(1)) == Ordering::greater) {
            bool ok = true;
            for (int i = 0; i < 100 && ok; ++i) {
                Int q = idea1_residual(alpha, sample_x(rng, 100000)).quarters;
                ok = (q == 2 || q == -2);
            }
            report("ideas", "idea1-residual", ok ? "pass" : "fail");
        } else {
            report("ideas", "idea1-residual", "skip");
        }
        // Idea 2: transporting beta by an even integer preserves the sum.
        if (alpha_compare(alpha, Rat(2)) == Ordering::greater) {
            bool ok = true;
            for (int i = 0; i < 50 && ok; ++i) ok = idea2_transport_check(alpha, 1, sample_x(rng, 100000));
            report("ideas", "idea2-transport", ok ? "pass" : "fail");
        } else {
            report("ideas", "idea2-transport", "skip");
        }
        // The splitting identity lives on infinite continued fractions.
        if (alpha.is_irrational())
            report("ideas", "idea3-split", idea3_range_check(alpha, to) ? "pass" : "fail");
        else
            report("ideas", "idea3-split", "skip");
    }

    if (suite == "bounds" || suite == "all") {
        // The upper bound applies to alpha_m = 1 - m + sqrt(m^2+1); recover m.
        std::optional<long long> m;
        if (alpha.kind() == AlphaSource::Kind::surd) {
            const QuadraticSurd& sv = alpha.surd_value();
            if (sv.q() == 1 && sv.p() <= 0) {
                Int mm = 1 - sv.p();
                if (sv.d() == mm * mm + 1 && mm >= 1 && mm < Int(1) << 30)
                    m = mm.convert_to<long long>();
            }
        }
        if (m) {
            bool ok = true;
            SumSeries ser(alpha, to);
            SeriesPoint pt{0, 0};
            while (ok && ser.next(pt)) ok = bound_check_upper(*m, Int(pt.n), Int(pt.s)).holds;
            report("bounds", "upper", ok ? "pass" : "fail");
            if (*m == 1) {
                bool lok = true;
                for (long long k = -12; k <= -1 && lok; ++k) lok = bound_check_lower_sqrt2(k);
                report("bounds", "lower-sqrt2", lok ? "pass" : "fail");
            } else {
                report("bounds", "lower-sqrt2", "skip");
            }
        } else {
            report("bounds", "upper", "skip");
            report("bounds", "lower-sqrt2", "skip");
        }
    }

    if (suite == "identity" || suite == "all") {
        report("identity", "sum-vs-discrepancy", identity_range_check(alpha, to) ? "pass" : "fail");
    }

    return all_pass ? 0 : 1;
}

int run_figure(int figure, const std::string& out_path, const std::string& n_max_str,
               const std::string& cap, std::ostream& fallback) {
    std::uint64_t n_max = parse_u64_arg(n_max_str, "--n-max");
    OutSink sink(out_path, fallback);
    std::ostream& out = sink.stream();
    if (figure == 1) {
        AlphaSource alpha = make_alpha("sqrt(2)", parse_u64_arg(cap, "--precision-cap"));
        out << "# figure1\tn\ts_n\talpha=sqrt(2)\n";
        out << "0\t0\n";
        SumSeries ser(alpha, 238);
        SeriesPoint pt{0, 0};
        while (ser.next(pt)) out << pt.n << '\t' << pt.s << '\n';
        return 0;
    }
    if (figure == 2) {
        AlphaSource alpha = make_alpha("sqrt(2)", parse_u64_arg(cap, "--precision-cap"));
        out << "# figure2\tlog10_r_k\tk\talpha=sqrt(2)\n";
        for (long long k = -9; k <= 9; ++k) {
            if (k == 0) continue;
            Int r = record_closed(alpha, k).r;
            out << fixed6(log10_int(r)) << '\t' << k << '\n';
        }
        return 0;
    }
    // Figure 3: pi from the bundled quotient fixture, records by bounded search.
    AlphaSource alpha = make_alpha("@" + data_dir() + "/pi_quotients.txt",
                                   parse_u64_arg(cap, "--precision-cap"));
    out << "# figure3\tlog10_r_k\tk\talpha=pi-fixture\n";
    std::map<long long, Int> rows;
    for (const RecordEntry& e : record_search(alpha, -22, 3, n_max)) rows.emplace(e.k, e.r);
    for (const auto& [k, r] : rows) out << fixed6(log10_int(r)) << '\t' << k << '\n';
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact alternating-sum toolkit: S_N(alpha), continuant numeration, records, "
                 "verification suites, and figure data"};
    app.require_subcommand(1);

    CommonCfg sum_cfg, series_cfg, cfe_cfg, records_cfg, verify_cfg, disc_cfg;
    std::string sum_n, sum_method = "naive";
    bool sum_no_timing = false;
    std::string series_to;
    std::string cfe_n, cfe_validate;
    long long rec_k_min = 0, rec_k_max = 0;
    std::string rec_n_max = "10000000", rec_method = "closed";
    std::string verify_suite, verify_to;
    std::string disc_n;
    int figure = 0;
    std::string fig_out, fig_n_max = "10000000", fig_cap = "0";

    CLI::App* sum = app.add_subcommand("sum", "S_N by the naive or closed-form method");
    add_common(sum, sum_cfg);
    sum->add_option("--n", sum_n, "N")->required();
    sum->add_option("--method", sum_method, "naive|fast|both")
        ->check(CLI::IsMember({"naive", "fast", "both"}));
    sum->add_flag("--no-timing", sum_no_timing, "omit the elapsed-time column");

    CLI::App* series = app.add_subcommand("series", "stream (n, S_n) for n = 0..N");
    add_common(series, series_cfg);
    series->add_option("--to", series_to, "largest N")->required();

    CLI::App* cfe = app.add_subcommand("cfe", "continuant-numeration digits of N");
    add_common(cfe, cfe_cfg);
    cfe->add_option("--n", cfe_n, "N to encode");
    cfe->add_option("--validate", cfe_validate, "digit tuple \"Z_I,...,Z_0\" to validate instead");

    CLI::App* records = app.add_subcommand("records", "record-holders R_k");
    add_common(records, records_cfg);
    records->add_option("--k-min", rec_k_min, "lowest level")->required();
    records->add_option("--k-max", rec_k_max, "highest level")->required();
    records->add_option("--n-max", rec_n_max, "search horizon (search/both methods)");
    records->add_option("--method", rec_method, "closed|search|both")
        ->check(CLI::IsMember({"closed", "search", "both"}));

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    add_common(verify, verify_cfg);
    verify->add_option("--suite", verify_suite, "ideas|bounds|identity|all")
        ->required()
        ->check(CLI::IsMember({"ideas", "bounds", "identity", "all"}));
    verify->add_option("--to", verify_to, "range bound N")->required();

    CLI::App* disc = app.add_subcommand("discrepancy", "the |S_N| = 2N D_N(1/2) identity at one N");
    add_common(disc, disc_cfg);
    disc->add_option("--n", disc_n, "N")->required();

    CLI::App* fig = app.add_subcommand("figure-data", "emit data behind the figures");
    fig->add_option("--figure", figure, "1|2|3")->required()->check(CLI::Range(1, 3));
    fig->add_option("--out", fig_out, "write TSV here instead of standard output");
    fig->add_option("--n-max", fig_n_max, "search horizon for figure 3");
    fig->add_option("--precision-cap", fig_cap, "override the quotient-table index cap");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("altsum");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::ParseError& e) {
            std::ostringstream msg;
            int rc = app.exit(e, out, msg);
            if (rc == 0) return 0;  // --help and friends
            err << msg.str();
            return 3;
        }
        if (sum->parsed()) return run_sum(sum_cfg, sum_n, sum_method, sum_no_timing, out);
        if (series->parsed()) return run_series(series_cfg, series_to, out);
        if (cfe->parsed())
            return run_cfe(cfe_cfg, cfe_n, cfe_validate, cfe->count("--validate") > 0, out);
        if (records->parsed())
            return run_records(records_cfg, rec_k_min, rec_k_max, rec_n_max, rec_method, out);
        if (verify->parsed()) return run_verify(verify_cfg, verify_suite, verify_to, out);
        if (disc->parsed()) return run_discrepancy(disc_cfg, disc_n, out);
        if (fig->parsed()) return run_figure(figure, fig_out, fig_n_max, fig_cap, out);
        err << "altsum: no subcommand\n";
        return 3;
    } catch (const MethodMismatch& e) {
        err << "altsum: " << e.what() << '\n';
        return 2;
    } catch (const InsufficientPrecision& e) {
        err << "altsum: " << e.what() << '\n';
        return 4;
    } catch (const Error& e) {
        err << "altsum: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "altsum: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace altsum_cli
