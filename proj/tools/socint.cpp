// socint: command-line front end for the information-spectrum toolkit.
//
// Subcommands:
//   rates     second-order coding / intrinsic-randomness sweeps
//   tradeoff  joint code+extractor pairs and the folklore trade-off check
//   universal type-based universal codes evaluated against i.i.d. sources
//   kl        S* family, second-order variants, constructed-code KL rates
//   selfcheck small-scale oracle suite; exits nonzero on any mismatch
//
// All rates are nats unless --bits is given, which rescales displayed
// values only. Output is byte-deterministic for a fixed config.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "socint/coding.hpp"
#include "socint/distribution.hpp"
#include "socint/golden.hpp"
#include "socint/markov.hpp"
#include "socint/normal.hpp"
#include "socint/randomness.hpp"
#include "socint/spectrum.hpp"
#include "socint/tradeoff.hpp"
#include "socint/type_table.hpp"
#include "socint/universal.hpp"

using nlohmann::ordered_json;
using namespace socint;

namespace {

constexpr double kLn2 = 0.6931471805599453;

// ---------------------------------------------------------------- sources

struct Source {
    std::string text;
    std::optional<FiniteDistribution> dist;  // i.i.d. per-symbol law
    std::optional<MarkovSource> chain;

    bool is_markov() const { return chain.has_value(); }
    double entropy_rate() const {
        return is_markov() ? markov_entropy_rate(*chain) : entropy(*dist);
    }
    double varentropy_rate() const {
        return is_markov() ? markov_varentropy(*chain) : varentropy(*dist);
    }
};

// stod that rejects trailing characters, so "0.11,extra" fails loudly
// instead of silently parsing as 0.11
double strict_stod(const std::string& text) {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size())
        throw std::invalid_argument("malformed number: " + text);
    return v;
}

Source parse_source(const std::string& text) {
    Source s;
    s.text = text;
    if (text.rfind("bernoulli:", 0) == 0) {
        s.dist = FiniteDistribution::bernoulli(strict_stod(text.substr(10)));
    } else if (text.rfind("uniform:", 0) == 0) {
        std::size_t used = 0;
        const std::string arg = text.substr(8);
        const unsigned long d = std::stoul(arg, &used);
        if (used != arg.size())
            throw std::invalid_argument("malformed alphabet size: " + arg);
        s.dist = FiniteDistribution::uniform(d);
    } else if (text.rfind("markov:", 0) == 0) {
        s.chain = MarkovSource::parse(text.substr(7));
    } else {
        s.dist = FiniteDistribution::parse(text);
    }
    return s;
}

// "--a H" resolves to the source's entropy rate.
double parse_rate(const std::string& text, const Source& src) {
    if (text == "H" || text == "h") return src.entropy_rate();
    return strict_stod(text);
}

// ------------------------------------------------------------ list parsing

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<std::uint32_t> parse_n_list(const std::string& text) {
    std::vector<std::uint32_t> out;
    for (const auto& tok : split(text, ',')) {
        const long long v = std::stoll(tok);
        if (v <= 0) throw CLI::ValidationError("--n", "block lengths must be positive");
        if (!out.empty() && static_cast<std::uint32_t>(v) <= out.back())
            throw CLI::ValidationError("--n", "n list must be strictly increasing");
        out.push_back(static_cast<std::uint32_t>(v));
    }
    if (out.empty()) throw CLI::ValidationError("--n", "empty n list");
    return out;
}

std::vector<double> parse_unit_list(const std::string& text, const char* flag) {
    std::vector<double> out;
    for (const auto& tok : split(text, ',')) {
        const double v = std::stod(tok);
        if (!(v > 0.0 && v < 1.0))
            throw CLI::ValidationError(flag, "values must lie in (0,1)");
        out.push_back(v);
    }
    if (out.empty()) throw CLI::ValidationError(flag, "empty list");
    return out;
}

// ----------------------------------------------------------- config files

// JSON config mirroring the flags; explicit command-line flags win. Unknown
// fields are rejected by name.
void apply_config(const std::string& path, CLI::App* cmd,
                  const std::map<std::string, std::function<void(const ordered_json&)>>& setters) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    ordered_json cfg;
    try {
        cfg = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw CLI::ValidationError("--config", std::string("parse error: ") + e.what());
    }
    if (!cfg.is_object())
        throw CLI::ValidationError("--config", "top level must be an object");
    for (const auto& [key, val] : cfg.items()) {
        const auto it = setters.find(key);
        if (it == setters.end())
            throw CLI::ValidationError("--config", "unknown field '" + key + "'");
        const auto* opt = cmd->get_option_no_throw("--" + key);
        if (opt != nullptr && opt->count() > 0) continue;  // flag overrides config
        it->second(val);
    }
}

std::string json_to_flag_text(const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string out;
        for (const auto& e : v) {
            if (!out.empty()) out += ',';
            out += e.is_string() ? e.get<std::string>() : e.dump();
        }
        return out;
    }
    return v.dump();
}

// ---------------------------------------------------------------- output

struct Emitter {
    std::string format = "json";  // json|csv
    std::string output;           // empty = stdout
    bool bits = false;

    // field name -> true when the value is denominated in nats
    std::vector<std::pair<std::string, bool>> columns;

    double display(double v, bool nats) const { return bits && nats ? v / kLn2 : v; }

    static std::string num(double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        return buf;
    }

    void emit(const std::string& command, const ordered_json& meta,
              const std::vector<ordered_json>& rows) const {
        std::string text;
        if (format == "csv") {
            std::string line;
            for (const auto& [name, nats] : columns) {
                (void)nats;
                if (!line.empty()) line += ',';
                line += name;
            }
            text += line + "\n";
            for (const auto& row : rows) {
                line.clear();
                for (const auto& [name, nats] : columns) {
                    if (!line.empty()) line += ',';
                    if (!row.contains(name)) continue;
                    const auto& v = row.at(name);
                    if (v.is_number())
                        line += num(display(v.get<double>(), nats));
                    else if (v.is_boolean())
                        line += v.get<bool>() ? "true" : "false";
                    else
                        line += v.get<std::string>();
                }
                text += line + "\n";
            }
        } else {
            ordered_json doc;
            doc["command"] = command;
            doc["units"] = bits ? "bits" : "nats";
            for (const auto& [k, v] : meta.items()) doc[k] = v;
            ordered_json out_rows = ordered_json::array();
            for (const auto& row : rows) {
                ordered_json r;
                for (const auto& [name, nats] : columns) {
                    if (!row.contains(name)) continue;
                    const auto& v = row.at(name);
                    if (v.is_number())
                        r[name] = display(v.get<double>(), nats);
                    else
                        r[name] = v;
                }
                out_rows.push_back(std::move(r));
            }
            doc["rows"] = std::move(out_rows);
            text = doc.dump(2) + "\n";
        }
        if (output.empty()) {
            std::fputs(text.c_str(), stdout);
        } else {
            std::ofstream f(output, std::ios::binary);
            if (!f) throw CLI::ValidationError("--output", "cannot write " + output);
            f << text;
        }
    }
};

// Runs tasks[0..k) on up to `jobs` threads; results keep task order.
std::vector<ordered_json> run_tasks(
    const std::vector<std::function<ordered_json()>>& tasks, unsigned jobs) {
    std::vector<ordered_json> rows(tasks.size());
    if (jobs <= 1 || tasks.size() <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) rows[i] = tasks[i]();
        return rows;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned width = std::min<std::size_t>(jobs, tasks.size());
    std::vector<std::exception_ptr> errors(width);
    for (unsigned t = 0; t < width; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = next++; i < tasks.size(); i = next++)
                    rows[i] = tasks[i]();
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

// ---------------------------------------------------------------- rates

int cmd_rates(const Source& src, const std::vector<std::uint32_t>& n_list,
              const std::vector<double>& eps_list, unsigned jobs, Emitter em) {
    const double h = src.entropy_rate();
    const double v = src.varentropy_rate();

    em.columns = {{"n", false},        {"eps", false},
                  {"logM_code", true}, {"b_code", true},
                  {"logM_ext", true},  {"b_ext", true},
                  {"gaussian_prediction", true}, {"gap", true}};

    std::vector<std::function<ordered_json()>> tasks;
    for (const auto n : n_list) {
        tasks.push_back([&, n]() {
            ordered_json per_n = ordered_json::array();
            std::optional<TypeClassTable> table;
            std::optional<LogLikMoments> mom;
            if (src.is_markov())
                mom = markov_loglik_moments(*src.chain, n);
            else
                table = iid_type_table(*src.dist, n);
            for (const double eps : eps_list) {
                double lm_code, lm_ext;
                if (src.is_markov()) {
                    // No per-class structure for chains; use the exact block
                    // moments with the normal quantile, which is
                    // second-order correct.
                    const double sd = std::sqrt(std::max(mom->variance, 0.0));
                    lm_code = mom->mean + sd * std_normal_quantile(1.0 - eps);
                    lm_ext = mom->mean + sd * std_normal_quantile(eps);
                } else {
                    lm_code = min_log_size_for_error(*table, eps);
                    lm_ext = max_log_size_for_distance(*table, eps);
                }
                const double b_code = second_order_coefficient(lm_code, n, h);
                const double b_ext = second_order_coefficient(lm_ext, n, h);
                const double pred =
                    v > 0.0 ? gaussian_second_order(v, 1.0 - eps) : 0.0;
                ordered_json row;
                row["n"] = static_cast<double>(n);
                row["eps"] = eps;
                row["logM_code"] = lm_code;
                row["b_code"] = b_code;
                row["logM_ext"] = lm_ext;
                row["b_ext"] = b_ext;
                row["gaussian_prediction"] = pred;
                row["gap"] = b_code - pred;
                per_n.push_back(std::move(row));
            }
            return per_n;
        });
    }
    const auto groups = run_tasks(tasks, jobs);
    std::vector<ordered_json> rows;
    for (const auto& g : groups)
        for (const auto& r : g) rows.push_back(r);

    ordered_json meta;
    meta["source"] = src.text;
    meta["H"] = em.display(h, true);
    meta["V"] = em.bits ? v / (kLn2 * kLn2) : v;
    em.emit("rates", meta, rows);
    return 0;
}

// -------------------------------------------------------------- tradeoff

int cmd_tradeoff(const Source& src, const std::vector<std::uint32_t>& n_list,
                 const std::string& a_text, double b, unsigned jobs, Emitter em) {
    if (src.is_markov())
        throw CLI::ValidationError("--source", "tradeoff requires an i.i.d. source");
    const double a = parse_rate(a_text, src);

    em.columns = {{"n", false},          {"a", true},
                  {"b", true},           {"code_error", false},
                  {"extractor_distance", false}, {"sum", false},
                  {"delta_pn", false},   {"holds", false},
                  {"slack", false}};

    std::vector<std::function<ordered_json()>> tasks;
    for (const auto n : n_list) {
        tasks.push_back([&, n]() {
            const auto table = iid_type_table(*src.dist, n);
            const auto pair = build_joint_pair(table, a, b);
            const auto check = verify_tradeoff(pair, table);
            ordered_json row;
            row["n"] = static_cast<double>(n);
            row["a"] = a;
            row["b"] = b;
            row["code_error"] = pair.code_error();
            row["extractor_distance"] = pair.extractor_distance();
            row["sum"] = check.sum;
            row["delta_pn"] = check.delta;
            row["holds"] = check.holds;
            row["slack"] = check.slack;
            return row;
        });
    }
    const auto rows = run_tasks(tasks, jobs);
    ordered_json meta;
    meta["source"] = src.text;
    em.emit("tradeoff", meta, rows);
    return 0;
}

// -------------------------------------------------------------- universal

int cmd_universal(const std::vector<std::uint32_t>& n_list, std::uint32_t d,
                  const std::string& a_text, double b,
                  const std::vector<std::string>& eval_texts, unsigned jobs,
                  Emitter em) {
    std::vector<Source> evals;
    for (const auto& t : eval_texts) {
        evals.push_back(parse_source(t));
        if (evals.back().is_markov() || evals.back().dist->size() != d)
            throw CLI::ValidationError(
                "--eval", "evaluation sources must be i.i.d. over d symbols");
    }
    if (evals.empty())
        throw CLI::ValidationError("--eval", "at least one evaluation source");
    const double a = parse_rate(a_text, evals.front());

    em.columns = {{"n", false},        {"d", false},
                  {"a", true},         {"b", true},
                  {"log_size_nats", true}, {"second_order_b", true},
                  {"source", false},   {"error", false},
                  {"extractor_bound", false}};

    std::vector<std::function<ordered_json()>> tasks;
    for (const auto n : n_list) {
        tasks.push_back([&, n]() {
            const auto ucode = universal_type_code(n, d, a, b);
            ordered_json per_n = ordered_json::array();
            for (const auto& ev : evals) {
                ordered_json row;
                row["n"] = static_cast<double>(n);
                row["d"] = static_cast<double>(d);
                row["a"] = a;
                row["b"] = b;
                row["log_size_nats"] = ucode.log_total_size;
                row["second_order_b"] =
                    second_order_coefficient(ucode.log_total_size, n, a);
                row["source"] = ev.text;
                row["error"] = universal_code_error(ucode, *ev.dist);
                row["extractor_bound"] =
                    universal_extractor_distance(n, d, a, b, *ev.dist);
                per_n.push_back(std::move(row));
            }
            return per_n;
        });
    }
    const auto groups = run_tasks(tasks, jobs);
    std::vector<ordered_json> rows;
    for (const auto& g : groups)
        for (const auto& r : g) rows.push_back(r);
    ordered_json meta;
    meta["d"] = d;
    em.emit("universal", meta, rows);
    return 0;
}

// ------------------------------------------------------------------- kl

// S*_2 for a Markov chain: same objective with psi replaced by the Perron
// log-eigenvalue of the entrywise power.
std::pair<double, double> markov_s_star_2(const MarkovSource& q, double delta) {
    auto f = [&](double s) { return (s * delta + markov_psi_bar(q, s)) / (1.0 - s); };
    std::vector<double> grid;
    const double lo = 1e-9;
    for (int i = 0; i < 128; ++i) {
        const double t = static_cast<double>(i) / 127.0;
        const double s = std::exp(std::log(lo) + t * (std::log(0.5) - std::log(lo)));
        grid.push_back(s);
        grid.push_back(1.0 - s);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return b - a < 1e-12; }),
               grid.end());
    std::size_t best = 0;
    double best_val = kPosInf;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = f(grid[i]);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    const double bl = best > 0 ? grid[best - 1] : lo;
    const double br = best + 1 < grid.size() ? grid[best + 1] : 1.0 - lo;
    return golden_minimize(f, bl, br, 1e-10);
}

int cmd_kl(const Source& src, const std::vector<double>& delta_list,
           const std::vector<std::uint32_t>& n_list, unsigned jobs, Emitter em) {
    const double h = src.entropy_rate();
    const double v = src.varentropy_rate();
    if (src.is_markov() && !n_list.empty())
        throw CLI::ValidationError("--n", "constructed codes require an i.i.d. source");

    em.columns = {{"delta", true},      {"s_star", true},
                  {"s_star_1", true},   {"s_star_2", true},
                  {"s_star_2_arg", false}, {"s_star_2nd", true},
                  {"s_star_1_2nd", true},  {"n", false},
                  {"kl_per_n", true}};

    std::vector<std::function<ordered_json()>> tasks;
    for (const double delta : delta_list) {
        tasks.push_back([&, delta]() {
            ordered_json base;
            base["delta"] = delta;
            if (src.is_markov()) {
                const auto [arg, val] = markov_s_star_2(*src.chain, delta);
                base["s_star"] = h + delta;
                base["s_star_1"] = h;
                base["s_star_2"] = val;
                base["s_star_2_arg"] = arg;
            } else {
                const auto fam = s_star_family(*src.dist, delta);
                base["s_star"] = fam.s_star;
                base["s_star_1"] = fam.s_star_1;
                base["s_star_2"] = fam.s_star_2;
                base["s_star_2_arg"] = fam.s_star_2_arg;
            }
            if (v > 0.0) {
                const auto so = s_star_second_order(v, delta);
                base["s_star_2nd"] = so.s_star_2nd;
                base["s_star_1_2nd"] = so.s_star_1_2nd;
            } else {
                base["s_star_2nd"] = 0.0;
                base["s_star_1_2nd"] = 0.0;
            }
            ordered_json per_delta = ordered_json::array();
            if (n_list.empty()) {
                per_delta.push_back(base);
            } else {
                for (const auto n : n_list) {
                    const auto table = iid_type_table(*src.dist, n);
                    const auto code = build_kl_optimal_code(table, h + delta);
                    ordered_json row = base;
                    row["n"] = static_cast<double>(n);
                    row["kl_per_n"] = code.kl_per_n;
                    per_delta.push_back(std::move(row));
                }
            }
            return per_delta;
        });
    }
    const auto groups = run_tasks(tasks, jobs);
    std::vector<ordered_json> rows;
    for (const auto& g : groups)
        for (const auto& r : g) rows.push_back(r);
    ordered_json meta;
    meta["source"] = src.text;
    meta["H"] = em.display(h, true);
    em.emit("kl", meta, rows);
    return 0;
}

// -------------------------------------------------------------- selfcheck

int cmd_selfcheck() {
    int failures = 0;
    auto check = [&](const char* name, double got, double want, double tol) {
        const bool ok = std::abs(got - want) <= tol;
        std::printf("%-44s %s  got %.12g  want %.12g\n", name,
                    ok ? "ok  " : "FAIL", got, want);
        if (!ok) ++failures;
    };

    const auto b11 = FiniteDistribution::bernoulli(0.11);
    check("entropy bernoulli(0.11)", entropy(b11), 0.34651533691866615, 1e-12);
    check("varentropy bernoulli(0.11)", varentropy(b11), 0.4279403169385257, 1e-12);
    check("normal quantile 0.975", std_normal_quantile(0.975), 1.9599639845400545, 1e-9);

    check("delta (0.5,0.25,0.25)",
          delta_uniform_gap(FiniteDistribution::parse("0.5,0.25,0.25")).delta,
          1.0 / 6.0, 1e-12);
    check("delta bernoulli(0.11)", delta_uniform_gap(b11).delta, 0.11, 1e-12);

    const auto p4 = FiniteDistribution::parse("0.4,0.3,0.2,0.1");
    const auto t4 = explicit_table(p4, 1);
    check("greedy extractor M=3 distance",
          extractor_distance(build_extractor(t4, 3)), 1.0 / 15.0, 1e-12);

    check("uniform(4) s_star_2",
          s_star_family(FiniteDistribution::uniform(4), 0.3).s_star_2,
          std::log(4.0), 1e-9);
    check("bernoulli(0.11) s_star_2 delta=0.1",
          s_star_family(b11, 0.1).s_star_2, 0.585258028449931, 1e-9);

    const auto t2 = iid_type_table(b11, 2);
    check("kl-optimal code eps_n (n=2, a=1)",
          build_kl_optimal_code(t2, 1.0).composite.epsilon_n, 0.7921, 1e-12);
    const auto f2 = spectrum_cdf(t2);
    check("spectrum quantile (n=2, eps=0.5)", quantile_rate(f2, 0.5),
          -std::log(0.89), 1e-12);

    const auto pair2 = build_joint_pair(t2, entropy(b11), 0.0);
    const auto chk2 = verify_tradeoff(pair2, t2);
    check("tradeoff holds (n=2)", chk2.holds ? 1.0 : 0.0, 1.0, 0.0);

    const auto uc = universal_type_code(16, 2, 0.75, 0.0);
    check("universal full-inclusion error",
          universal_code_error(uc, FiniteDistribution::bernoulli(0.5)), 0.0, 0.0);

    if (failures > 0) {
        std::printf("selfcheck: %d failure(s)\n", failures);
        return 1;
    }
    std::printf("selfcheck: all ok\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"information-spectrum source coding and intrinsic randomness"};
    app.require_subcommand(1);

    // shared flag storage
    std::string source_text, n_text, eps_text, delta_text, a_text = "H";
    std::string eval_joined, config_path, format = "json", output;
    double b = 0.0;
    std::uint32_t d = 2;
    unsigned jobs = 1;
    bool bits = false;
    std::vector<std::string> eval_texts;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--output", output, "output path (default stdout)");
        cmd->add_flag("--bits", bits, "display rates in bits (storage stays in nats)");
        cmd->add_option("--jobs", jobs, "sweep-point concurrency");
        cmd->add_option("--config", config_path, "JSON config mirroring the flags");
    };

    auto* rates = app.add_subcommand("rates", "second-order size sweeps");
    rates->add_option("--source", source_text, "bernoulli:p | uniform:d | markov:\"rows\" | p1,p2,...");
    rates->add_option("--n", n_text, "comma-separated block lengths, strictly increasing");
    rates->add_option("--eps", eps_text, "error / distance levels in (0,1)");
    add_common(rates);

    auto* tradeoff = app.add_subcommand("tradeoff", "joint pair + folklore inequality");
    tradeoff->add_option("--source", source_text, "i.i.d. source spec");
    tradeoff->add_option("--n", n_text, "block lengths");
    tradeoff->add_option("--a", a_text, "first-order rate in nats, or H");
    tradeoff->add_option("--b", b, "second-order rate");
    add_common(tradeoff);

    auto* universal = app.add_subcommand("universal", "type-based universal code");
    universal->add_option("--n", n_text, "block lengths");
    universal->add_option("--d", d, "alphabet size");
    universal->add_option("--a", a_text, "first-order rate in nats, or H of the first --eval");
    universal->add_option("--b", b, "second-order rate");
    universal->add_option("--eval", eval_texts, "i.i.d. evaluation source (repeatable)");
    add_common(universal);

    auto* kl = app.add_subcommand("kl", "KL-criterion randomness rates");
    kl->add_option("--source", source_text, "source spec");
    kl->add_option("--delta", delta_text, "KL budgets in (0,1)");
    kl->add_option("--n", n_text, "optional block lengths for constructed codes");
    add_common(kl);

    auto* selfcheck = app.add_subcommand("selfcheck", "run the small oracle suite");
    (void)selfcheck;

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* active = app.get_subcommands().front();
        if (!config_path.empty() && active->get_name() != "selfcheck") {
            std::map<std::string, std::function<void(const ordered_json&)>> setters = {
                {"source", [&](const ordered_json& v) { source_text = json_to_flag_text(v); }},
                {"n", [&](const ordered_json& v) { n_text = json_to_flag_text(v); }},
                {"eps", [&](const ordered_json& v) { eps_text = json_to_flag_text(v); }},
                {"delta", [&](const ordered_json& v) { delta_text = json_to_flag_text(v); }},
                {"a", [&](const ordered_json& v) { a_text = json_to_flag_text(v); }},
                {"b", [&](const ordered_json& v) { b = v.get<double>(); }},
                {"d", [&](const ordered_json& v) { d = v.get<std::uint32_t>(); }},
                {"eval",
                 [&](const ordered_json& v) {
                     eval_texts.clear();
                     if (v.is_array())
                         for (const auto& e : v) eval_texts.push_back(e.get<std::string>());
                     else
                         eval_texts.push_back(v.get<std::string>());
                 }},
                {"format", [&](const ordered_json& v) { format = v.get<std::string>(); }},
                {"output", [&](const ordered_json& v) { output = v.get<std::string>(); }},
                {"bits", [&](const ordered_json& v) { bits = v.get<bool>(); }},
                {"jobs", [&](const ordered_json& v) { jobs = v.get<unsigned>(); }},
            };
            apply_config(config_path, active, setters);
        }

        Emitter em;
        em.format = format;
        em.output = output;
        em.bits = bits;

        if (active == rates) {
            if (source_text.empty() || n_text.empty() || eps_text.empty())
                throw CLI::ValidationError("rates", "--source, --n, --eps are required");
            return cmd_rates(parse_source(source_text), parse_n_list(n_text),
                             parse_unit_list(eps_text, "--eps"), jobs, em);
        }
        if (active == tradeoff) {
            if (source_text.empty() || n_text.empty())
                throw CLI::ValidationError("tradeoff", "--source and --n are required");
            return cmd_tradeoff(parse_source(source_text), parse_n_list(n_text),
                                a_text, b, jobs, em);
        }
        if (active == universal) {
            if (n_text.empty() || eval_texts.empty())
                throw CLI::ValidationError("universal", "--n and --eval are required");
            return cmd_universal(parse_n_list(n_text), d, a_text, b, eval_texts,
                                 jobs, em);
        }
        if (active == kl) {
            if (source_text.empty() || delta_text.empty())
                throw CLI::ValidationError("kl", "--source and --delta are required");
            return cmd_kl(parse_source(source_text),
                          parse_unit_list(delta_text, "--delta"),
                          n_text.empty() ? std::vector<std::uint32_t>{}
                                         : parse_n_list(n_text),
                          jobs, em);
        }
        return cmd_selfcheck();
    } catch (const CLI::Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
