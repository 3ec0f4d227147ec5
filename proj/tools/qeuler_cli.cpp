// Command-line front door: compute single family values, emit tables, run
// fermionic integrals with level diagnostics, and execute the identity suite.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qeuler/qeuler.hpp"
#include "qeuler/report_json.hpp"

namespace {

using nlohmann::ordered_json;
using namespace qeuler;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    ~Timer() {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::cerr << "time_ms=" << ms << "\n";
    }
};

std::vector<long long> parse_ll_list(const std::string& s) {
    std::vector<long long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw parse_error("empty entry in list: " + s);
        out.push_back(std::stoll(item));
    }
    return out;
}

struct Range {
    long long lo = 0, hi = -1; // empty when hi < lo
};

Range parse_range(const std::string& s) {
    Range r;
    std::size_t dots = s.find("..");
    if (dots == std::string::npos) {
        r.lo = r.hi = std::stoll(s);
    } else {
        r.lo = std::stoll(s.substr(0, dots));
        r.hi = std::stoll(s.substr(dots + 2));
    }
    return r;
}

/// q literal: "a/b", an integer, or "1+p" (needs the prime).
Rational parse_q_literal(const std::string& s, const std::optional<long long>& p) {
    if (s == "1+p") {
        if (!p) throw domain_error("q literal \"1+p\" needs --p");
        return Rational(1 + *p);
    }
    return parse_rational(s);
}

struct ComputeArgs {
    std::string family = "basic";
    long long n = 0, r = 1, h = 0, x = 0;
    std::string w_list, delta_list;
    std::string backend = "rat";
    std::string q_literal;
    long long p = 0;
    int prec = 12;
    std::string format = "plain";
};

EulerFamilySpec build_spec(const ComputeArgs& a) {
    EulerFamilySpec spec;
    spec.kind = family_from_name(a.family);
    spec.n = a.n;
    spec.r = a.r;
    spec.h = a.h;
    spec.x = a.x;
    if (spec.kind == FamilyKind::weighted || spec.kind == FamilyKind::weighted_star) {
        if (a.w_list.empty() || a.delta_list.empty())
            throw domain_error("weighted families need --w and --delta");
        spec.w = parse_ll_list(a.w_list);
        spec.delta = parse_ll_list(a.delta_list);
        if (spec.w.size() != spec.delta.size())
            throw domain_error("--w and --delta must have the same length");
        spec.r = static_cast<long long>(spec.w.size());
    }
    return spec;
}

void emit_record(const std::string& command, const ordered_json& params,
                 const std::string& backend, const std::string& value, const std::string& format) {
    if (format == "json") {
        ordered_json j;
        j["command"] = command;
        j["params"] = params;
        j["backend"] = backend;
        j["value"] = value;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << command;
        for (const auto& [k, v] : params.items()) {
            std::cout << " " << k << "=";
            if (v.is_string())
                std::cout << v.get<std::string>();
            else
                std::cout << v.dump();
        }
        std::cout << " backend=" << backend << " value=" << value << "\n";
    }
}

int cmd_compute(const ComputeArgs& a) {
    Timer timer;
    EulerFamilySpec spec = build_spec(a);
    ordered_json params;
    params["family"] = a.family;
    params["n"] = a.n;
    if (spec.kind != FamilyKind::basic && spec.kind != FamilyKind::classical) params["r"] = spec.r;
    if (spec.kind == FamilyKind::h_r || spec.kind == FamilyKind::h_neg_r) params["h"] = a.h;
    params["x"] = a.x;
    if (spec.kind == FamilyKind::weighted || spec.kind == FamilyKind::weighted_star) {
        params["w"] = a.w_list;
        params["delta"] = a.delta_list;
    }

    std::string value;
    std::string backend = a.backend;
    if (spec.kind == FamilyKind::classical) {
        backend = "rat";
        value = rational_to_string(classical_euler(spec.n, spec.r, Rational(spec.x)));
    } else if (a.backend == "func") {
        FuncFieldCtx fx;
        value = ratfunc_to_string(evaluate_family(fx, spec));
    } else if (a.backend == "rat") {
        if (a.q_literal.empty()) throw domain_error("--backend rat needs --q");
        RationalCtx ctx(parse_q_literal(a.q_literal, std::nullopt));
        params["q"] = a.q_literal;
        value = rational_to_string(evaluate_family(ctx, spec));
    } else if (a.backend == "padic") {
        if (a.p == 0) throw domain_error("--backend padic needs --p");
        std::string qlit = a.q_literal.empty() ? "1+p" : a.q_literal;
        PadicCtx ctx(Int(a.p), a.prec, parse_q_literal(qlit, a.p));
        params["q"] = qlit;
        params["p"] = a.p;
        params["prec"] = a.prec;
        value = padic_to_string(evaluate_family(ctx, spec));
    } else {
        throw domain_error("unknown backend: " + a.backend);
    }
    emit_record("compute", params, backend, value, a.format);
    return 0;
}

struct TableArgs {
    std::string family = "basic";
    std::string n_range = "0..0";
    std::string r_range, h_range;
    long long x = 0;
    std::string w_list, delta_list;
    std::string backend = "rat";
    std::string q_literal;
    long long p = 0;
    int prec = 12;
    std::string format = "csv";
    std::string out;
};

int cmd_table(const TableArgs& a) {
    Timer timer;
    FamilyKind kind = family_from_name(a.family);
    Range nr = parse_range(a.n_range);
    Range rr = a.r_range.empty() ? Range{1, 1} : parse_range(a.r_range);
    Range hr = a.h_range.empty() ? Range{0, 0} : parse_range(a.h_range);

    std::string q_column;
    std::optional<RationalCtx> rctx;
    std::optional<PadicCtx> pctx;
    FuncFieldCtx fctx;
    if (kind == FamilyKind::classical) {
        q_column = "1";
    } else if (a.backend == "func") {
        q_column = "q";
    } else if (a.backend == "rat") {
        if (a.q_literal.empty()) throw domain_error("--backend rat needs --q");
        rctx.emplace(parse_q_literal(a.q_literal, std::nullopt));
        q_column = a.q_literal;
    } else if (a.backend == "padic") {
        if (a.p == 0) throw domain_error("--backend padic needs --p");
        std::string qlit = a.q_literal.empty() ? "1+p" : a.q_literal;
        pctx.emplace(Int(a.p), a.prec, parse_q_literal(qlit, a.p));
        q_column = qlit;
    } else {
        throw domain_error("unknown backend: " + a.backend);
    }

    std::vector<ordered_json> rows;
    ComputeArgs base;
    base.family = a.family;
    base.x = a.x;
    base.w_list = a.w_list;
    base.delta_list = a.delta_list;
    for (long long n = nr.lo; n <= nr.hi; ++n)
        for (long long r = rr.lo; r <= rr.hi; ++r)
            for (long long h = hr.lo; h <= hr.hi; ++h) {
                ComputeArgs one = base;
                one.n = n;
                one.r = r;
                one.h = h;
                EulerFamilySpec spec = build_spec(one);
                std::string value;
                if (kind == FamilyKind::classical)
                    value = rational_to_string(classical_euler(n, r, Rational(a.x)));
                else if (a.backend == "func")
                    value = ratfunc_to_string(evaluate_family(fctx, spec));
                else if (a.backend == "rat")
                    value = rational_to_string(evaluate_family(*rctx, spec));
                else
                    value = padic_to_string(evaluate_family(*pctx, spec));
                ordered_json row;
                row["family"] = a.family;
                row["n"] = n;
                row["r"] = r;
                row["h"] = h;
                row["x"] = a.x;
                row["q"] = q_column;
                row["backend"] = kind == FamilyKind::classical ? "rat" : a.backend;
                row["value"] = value;
                rows.push_back(std::move(row));
            }

    std::ofstream out(a.out);
    if (!out) throw error("cannot open output path: " + a.out);
    if (a.format == "csv") {
        out << "family,n,r,h,x,q,backend,value\n";
        for (const auto& row : rows) {
            out << csv_quote(row["family"].get<std::string>()) << "," << row["n"] << ","
                << row["r"] << "," << row["h"] << "," << row["x"] << ","
                << csv_quote(row["q"].get<std::string>()) << ","
                << csv_quote(row["backend"].get<std::string>()) << ","
                << csv_quote(row["value"].get<std::string>()) << "\n";
        }
    } else if (a.format == "json") {
        ordered_json doc;
        doc["columns"] = {"family", "n", "r", "h", "x", "q", "backend", "value"};
        doc["rows"] = rows;
        out << doc.dump(2) << "\n";
    } else {
        throw domain_error("unknown table format: " + a.format);
    }
    if (!out.good()) throw error("write failed: " + a.out);
    return 0;
}

struct IntegrateArgs {
    long long p = 3;
    int prec = 12;
    std::string q_literal = "1+p";
    long long n = 0, r = 1, x = 0;
    std::optional<long long> h;
    std::string w_list, delta_list;
    std::string levels = "1..3";
    long long max_points = 10'000'000;
    std::string format = "plain";
};

int cmd_integrate(const IntegrateArgs& a) {
    Timer timer;
    PadicCtx ctx(Int(a.p), a.prec, parse_q_literal(a.q_literal, a.p));
    RationalCtx rctx = ctx.rational_ctx();
    IntegratorLimits limits;
    limits.max_grid_points = a.max_points;
    Range lv = parse_range(a.levels);
    if (lv.lo < 1 || lv.hi < lv.lo) throw domain_error("bad --levels range");

    MeasureSpec measure;
    Integrand<RationalCtx> f;
    Rational closed;
    if (!a.w_list.empty() || !a.delta_list.empty()) {
        std::vector<long long> w =
            a.w_list.empty() ? std::vector<long long>(parse_ll_list(a.delta_list).size(), 1)
                             : parse_ll_list(a.w_list);
        std::vector<long long> delta =
            a.delta_list.empty() ? std::vector<long long>(w.size(), 0) : parse_ll_list(a.delta_list);
        if (w.size() != delta.size()) throw domain_error("--w and --delta must have the same length");
        long long r = static_cast<long long>(w.size());
        measure = weighted_measure(delta);
        f = weighted_bracket_power_integrand(rctx, static_cast<int>(r), a.n, a.x, w);
        closed = euler_weighted(rctx, a.n, r, a.x, w, delta);
    } else if (a.h) {
        measure = hr_measure(*a.h, a.r);
        f = bracket_power_integrand(rctx, static_cast<int>(a.r), a.n, a.x);
        closed = euler_hr(rctx, a.n, *a.h, a.r, a.x);
    } else {
        measure = MeasureSpec(static_cast<std::size_t>(a.r), MeasureCoordinate{0, 0});
        f = bracket_power_integrand(rctx, static_cast<int>(a.r), a.n, a.x);
        closed = euler_order_r(rctx, a.n, a.r, a.x);
    }

    std::vector<Rational> level_values;
    for (long long level = lv.lo; level <= lv.hi; ++level)
        level_values.push_back(
            multivariate_sum_level(rctx, f, measure, ctx.prime(), static_cast<int>(level), limits));
    auto result = detail::analyze_levels(ctx, level_values);

    Rational diff = closed - level_values.back();
    std::optional<long long> agreement;
    if (diff != 0) agreement = valuation(diff, ctx.prime());
    Padic closed_embedded = ctx.from_rational(closed);

    if (a.format == "json") {
        ordered_json j;
        j["command"] = "integrate";
        j["p"] = a.p;
        j["q"] = a.q_literal;
        j["prec"] = a.prec;
        ordered_json levels_json = ordered_json::array();
        for (std::size_t i = 0; i < level_values.size(); ++i) {
            ordered_json rec;
            rec["level"] = lv.lo + static_cast<long long>(i);
            rec["value"] = padic_to_string(padic_from_rational(level_values[i], ctx.prime(), a.prec));
            if (i > 0)
                rec["diff_valuation"] = result.diff_valuations[i - 1]
                                            ? ordered_json(*result.diff_valuations[i - 1])
                                            : ordered_json("inf");
            levels_json.push_back(std::move(rec));
        }
        j["levels"] = std::move(levels_json);
        j["achieved_precision"] = result.achieved_precision;
        j["stabilizing"] = result.stabilizing;
        j["closed_form"] = padic_to_string(closed_embedded);
        j["agreement_valuation"] = agreement ? ordered_json(*agreement) : ordered_json("inf");
        std::cout << j.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < level_values.size(); ++i) {
            std::cout << "level " << (lv.lo + static_cast<long long>(i)) << ": value="
                      << padic_to_string(padic_from_rational(level_values[i], ctx.prime(), a.prec));
            if (i > 0) {
                std::cout << " diff_valuation=";
                if (result.diff_valuations[i - 1])
                    std::cout << *result.diff_valuations[i - 1];
                else
                    std::cout << "inf";
            }
            std::cout << "\n";
        }
        std::cout << "achieved_precision=" << result.achieved_precision << "\n";
        std::cout << "stabilizing=" << (result.stabilizing ? "true" : "false") << "\n";
        std::cout << "closed_form=" << padic_to_string(closed_embedded) << "\n";
        std::cout << "agreement_valuation=";
        if (agreement)
            std::cout << *agreement;
        else
            std::cout << "inf";
        std::cout << "\n";
    }
    return 0;
}

struct VerifyArgs {
    std::string suite = "all";
    long long max_n = 6, max_r = 4, max_x = 3, max_m = 4;
    int levels = 3;
    std::string primes = "3,5";
    int prec = 12;
    std::string backend = "all";
    std::string report_path;
};

int cmd_verify(const VerifyArgs& a) {
    Timer timer;
    GridSpec grid;
    grid.max_n = a.max_n;
    grid.max_r = a.max_r;
    grid.max_x = a.max_x;
    grid.max_m = a.max_m;
    grid.levels = a.levels;
    grid.primes = parse_ll_list(a.primes);
    grid.padic_prec = a.prec;
    grid.padic_max_n = std::min<long long>(a.max_n, 4);
    grid.padic_max_r = std::min<long long>(a.max_r, 3);

    BackendFilter filter = BackendFilter::all;
    if (a.backend == "func")
        filter = BackendFilter::func_only;
    else if (a.backend == "padic")
        filter = BackendFilter::padic_only;
    else if (a.backend != "all")
        throw domain_error("unknown backend filter: " + a.backend);

    std::vector<std::string> selection;
    {
        std::stringstream ss(a.suite);
        std::string item;
        while (std::getline(ss, item, ',')) selection.push_back(item);
    }
    // Unknown ids are a usage error, caught before any work starts.
    if (!(selection.size() == 1 && selection[0] == "all")) {
        auto ids = identity_ids();
        for (const auto& id : selection) {
            bool known = false;
            for (const auto& known_id : ids) known = known || known_id == id;
            if (!known) {
                std::cerr << "unknown identity id: " << id << "\n";
                return 2;
            }
        }
    }

    SuiteReport report = run_suite(selection, grid, filter);
    for (const auto& chk : report.checks) {
        std::cout << chk.id << ": pass=" << chk.passed() << " fail=" << chk.failed()
                  << " skipped=" << chk.skipped();
        if (chk.documented) std::cout << " [documented]";
        std::cout << "\n";
    }
    std::cout << "suite: pass_rate=";
    if (report.pass_rate)
        std::cout << report.pass_rate->first << "/" << report.pass_rate->second;
    else
        std::cout << "undefined";
    std::cout << " undocumented_failures=" << report.undocumented_failures
              << " documented_discrepancies=[";
    for (std::size_t i = 0; i < report.documented_discrepancies.size(); ++i) {
        if (i) std::cout << ",";
        std::cout << report.documented_discrepancies[i];
    }
    std::cout << "]\n";

    if (!a.report_path.empty()) {
        std::ofstream out(a.report_path);
        if (!out) throw error("cannot open report path: " + a.report_path);
        out << report_to_json(report).dump(2) << "\n";
        if (!out.good()) throw error("write failed: " + a.report_path);
    }
    return report.undocumented_failures == 0 ? 0 : 1;
}

/// --config FILE: JSON object mirroring the long flags of the subcommand.
/// Values from the file are injected before the explicit flags, so the
/// command line wins.
std::vector<std::string> inject_config(std::vector<std::string> args) {
    std::string config_path;
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
        if (args[i] == "--config") {
            config_path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                       args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
    }
    if (config_path.empty()) return args;
    std::ifstream in(config_path);
    if (!in) throw error("cannot open config file: " + config_path);
    nlohmann::json cfg = nlohmann::json::parse(in);
    if (!cfg.is_object()) throw parse_error("config must be a JSON object");
    if (args.empty()) throw domain_error("--config needs a subcommand");
    std::vector<std::string> injected;
    injected.push_back(args[0]); // subcommand
    for (const auto& [key, value] : cfg.items()) {
        injected.push_back("--" + key);
        if (value.is_string())
            injected.push_back(value.get<std::string>());
        else
            injected.push_back(value.dump());
    }
    injected.insert(injected.end(), args.begin() + 1, args.end());
    return injected;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact q-Euler family calculator and identity verifier"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    ComputeArgs ca;
    auto* compute = app.add_subcommand("compute", "compute one family value");
    compute->add_option("--family", ca.family, "basic|r|neg-r|hr|h-neg-r|weighted|weighted-star|classical");
    compute->add_option("--n", ca.n, "degree n");
    compute->add_option("--r", ca.r, "order r");
    compute->add_option("--h", ca.h, "weight parameter h");
    compute->add_option("--x", ca.x, "argument x");
    compute->add_option("--w", ca.w_list, "comma list of weights");
    compute->add_option("--delta", ca.delta_list, "comma list of measure exponents");
    compute->add_option("--backend", ca.backend, "rat|func|padic");
    compute->add_option("--q", ca.q_literal, "q literal: a/b, integer, or 1+p");
    compute->add_option("--p", ca.p, "odd prime (padic backend)");
    compute->add_option("--prec", ca.prec, "p-adic precision");
    compute->add_option("--format", ca.format, "plain|json");

    TableArgs ta;
    auto* table = app.add_subcommand("table", "emit a family table");
    table->add_option("--family", ta.family);
    table->add_option("--n", ta.n_range, "range A..B or single N");
    table->add_option("--r", ta.r_range, "range A..B");
    table->add_option("--h", ta.h_range, "range A..B");
    table->add_option("--x", ta.x);
    table->add_option("--w", ta.w_list);
    table->add_option("--delta", ta.delta_list);
    table->add_option("--backend", ta.backend);
    table->add_option("--q", ta.q_literal);
    table->add_option("--p", ta.p);
    table->add_option("--prec", ta.prec);
    table->add_option("--format", ta.format, "csv|json");
    table->add_option("--out", ta.out, "output path")->required();

    IntegrateArgs ia;
    auto* integrate = app.add_subcommand("integrate", "run truncated fermionic integrals");
    integrate->add_option("--p", ia.p, "odd prime");
    integrate->add_option("--prec", ia.prec);
    integrate->add_option("--q", ia.q_literal);
    integrate->add_option("--n", ia.n);
    integrate->add_option("--r", ia.r);
    long long integrate_h = 0;
    integrate->add_option("--h", integrate_h,
                          "weight parameter h (selects the (h,r) weighted integrand)");
    integrate->add_option("--x", ia.x);
    integrate->add_option("--w", ia.w_list);
    integrate->add_option("--delta", ia.delta_list);
    integrate->add_option("--levels", ia.levels, "range A..B of truncation levels");
    integrate->add_option("--max-points", ia.max_points, "grid point budget");
    integrate->add_option("--format", ia.format, "plain|json");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "run the identity verification suite");
    verify->add_option("--suite", va.suite, "all or comma list of identity ids");
    verify->add_option("--max-n", va.max_n);
    verify->add_option("--max-r", va.max_r);
    verify->add_option("--max-x", va.max_x);
    verify->add_option("--max-m", va.max_m);
    verify->add_option("--levels", va.levels);
    verify->add_option("--primes", va.primes, "comma list of odd primes");
    verify->add_option("--prec", va.prec);
    verify->add_option("--backend", va.backend, "all|func|padic");
    verify->add_option("--report", va.report_path, "write the JSON report here");

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = inject_config(args);
    } catch (const qeuler::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: bad config: " << e.what() << "\n";
        return 2;
    }

    try {
        std::vector<const char*> cargs;
        cargs.push_back(argv[0]);
        for (const auto& s : args) cargs.push_back(s.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (compute->parsed()) return cmd_compute(ca);
        if (table->parsed()) return cmd_table(ta);
        if (integrate->parsed()) {
            if (integrate->count("--h") > 0) ia.h = integrate_h;
            return cmd_integrate(ia);
        }
        if (verify->parsed()) return cmd_verify(va);
    } catch (const qeuler::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qeuler::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qeuler::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
