#include "hoftrace/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"

#include "hoftrace/dos.hpp"
#include "hoftrace/errors.hpp"
#include "hoftrace/kreft.hpp"
#include "hoftrace/oracle.hpp"

namespace hoftrace::cli {

using nlohmann::json;

namespace {

constexpr std::string_view kCommandNames[] = {"coeffs", "trace", "point-trace", "dos", "series", "verify"};

double rel_dev(double a, double b) {
    if (a == b) return 0.0;
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

json nullable(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// ---- CSV ----

std::string emit_cell(const json& cell) {
    if (cell.is_null()) return "";
    if (cell.is_string()) {
        std::string out = "\"";
        for (char c : cell.get<std::string>()) {
            if (c == '"') out += '"';
            out += c;
        }
        return out + "\"";
    }
    if (cell.is_number_float()) {
        const double v = cell.get<double>();
        if (std::isnan(v)) return "nan";
        if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    }
    return cell.dump();
}

json parse_cell(const std::string& field, bool quoted) {
    if (quoted) return field;
    if (field.empty()) return nullptr;
    if (field == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (field == "inf") return std::numeric_limits<double>::infinity();
    if (field == "-inf") return -std::numeric_limits<double>::infinity();
    json v = json::parse(field, nullptr, false);
    if (v.is_discarded() || !(v.is_number() || v.is_boolean()))
        throw std::invalid_argument("parse_csv: bad field '" + field + "'");
    if (v.is_number_unsigned()) return v.get<std::int64_t>();
    return v;
}

// ---- trace evaluation ----

double newton_trace(const ChambersPolynomial& poly, int n, std::optional<double> s) {
    if (n == 0) return 1.0;
    if (n % 2 == 1) return 0.0;
    std::vector<WideReal> coeffs(poly.q() + 1, WideReal(0));
    for (std::size_t j = 0; j < poly.a_wide.size(); ++j) coeffs[poly.q() - 2 * j] = -poly.a_wide[j];
    if (!s) return (newton_power_sums_wide(coeffs, n)[n - 1] / poly.q()).convert_to<double>();
    auto minus = coeffs, plus = coeffs;
    minus[0] -= *s;
    plus[0] += *s;
    const WideReal both = newton_power_sums_wide(minus, n)[n - 1] + newton_power_sums_wide(plus, n)[n - 1];
    return (both / (2 * poly.q())).convert_to<double>();
}

double power_sum(const std::vector<double>& roots, int n) {
    double total = 0.0;
    for (double E : roots) {
        double p = 1.0;
        for (int i = 0; i < n; ++i) p *= E;
        total += p;
    }
    return total;
}

double trace_value(const RunConfig& c, const Flux& flux, const ChambersPolynomial& poly, TraceKind kind,
                   std::optional<double> s, int n, std::vector<std::string>& warnings) {
    switch (c.method) {
        case TraceMethod::PartitionSum:
            if (kind == TraceKind::MidBand) return midband_trace(poly, n);
            if (kind == TraceKind::PlusMinusS) return pm_s_trace(poly, n, *s);
            return almost_mathieu_trace(poly, n);
        case TraceMethod::Series:
            return trace_series(flux, c.lambda, kind, s, n)[n];
        case TraceMethod::NewtonPowerSum:
            if (kind == TraceKind::FullQuantum)
                throw std::invalid_argument("method newton-power-sum applies to midband and pm-s traces only");
            return newton_trace(poly, n, kind == TraceKind::PlusMinusS ? s : std::nullopt);
        case TraceMethod::Oracle: {
            if (kind == TraceKind::FullQuantum) {
                const int grid = c.grid.value_or(n + 1);
                if (!bz_grid_sufficient(n, grid))
                    warnings.push_back("InsufficientGrid: grid " + std::to_string(grid) + " < n + 1 = " +
                                       std::to_string(n + 1) + "; the quadrature is not exact");
                return bz_trace(flux, c.lambda, n, grid, worker_count());
            }
            if (kind == TraceKind::MidBand) return power_sum(point_spectrum_roots(flux, c.lambda, 0.0, +1), n) / flux.q();
            const double both = power_sum(point_spectrum_roots(flux, c.lambda, *s, +1), n) +
                                power_sum(point_spectrum_roots(flux, c.lambda, *s, -1), n);
            return both / (2.0 * flux.q());
        }
    }
    throw std::logic_error("unreachable");
}

std::vector<int> requested_ns(const RunConfig& c) {
    if (c.n) return {*c.n};
    std::vector<int> ns;
    for (int n = 0; n <= *c.n_max; n += 2) ns.push_back(n);
    return ns;
}

json trace_record_json(const TraceRecord& r) {
    return json{{"p", r.flux.p()},
                {"q", r.flux.q()},
                {"lambda", r.lambda},
                {"kind", std::string(to_string(r.kind))},
                {"n", r.n},
                {"s", nullable(r.s)},
                {"value", r.value},
                {"method", std::string(to_string(r.method))}};
}

// ---- commands ----

Document coeffs_document(const RunConfig& c) {
    const Flux flux = make_flux(c.p, c.q);
    const auto poly = chambers_recursive(flux, c.lambda);
    Document d;
    d.json = {{"p", flux.p()},
              {"q", flux.q()},
              {"lambda", c.lambda},
              {"lambda_tilde", lambda_tilde(c.lambda, flux.q())},
              {"a", poly.a}};
    d.table.columns = {"j", "a"};
    for (std::size_t j = 0; j < poly.a.size(); ++j) d.table.rows.push_back({json(static_cast<std::int64_t>(j)), json(poly.a[j])});
    return d;
}

Document trace_document(const RunConfig& c, TraceKind kind, std::vector<std::string>& warnings) {
    const Flux flux = make_flux(c.p, c.q);
    const auto poly = chambers_recursive(flux, c.lambda);
    std::vector<std::optional<double>> svals;
    if (kind == TraceKind::PlusMinusS) {
        for (double s : c.s) {
            svals.emplace_back(s);
            if (!in_point_spectrum_range(poly, s)) {
                std::ostringstream msg;
                msg << "s = " << s << " lies outside the point spectrum [-" << poly.spectral_half_width() << ", "
                    << poly.spectral_half_width() << "]; the trace is the polynomial continuation";
                warnings.push_back(msg.str());
            }
        }
    } else {
        svals.emplace_back(std::nullopt);
    }

    std::vector<TraceRecord> records;
    for (const auto& s : svals)
        for (int n : requested_ns(c))
            records.push_back({flux, c.lambda, n, s, kind, trace_value(c, flux, poly, kind, s, n, warnings), c.method});

    Document d;
    d.table.columns = {"p", "q", "lambda", "kind", "n", "s", "value", "method"};
    json list = json::array();
    for (const auto& r : records) {
        json j = trace_record_json(r);
        list.push_back(j);
        std::vector<json> row;
        for (const auto& col : d.table.columns) row.push_back(j[col]);
        d.table.rows.push_back(std::move(row));
    }
    if (records.size() == 1) {
        d.json = list[0];
        d.json["trace"] = records[0].value;
    } else {
        d.json = {{"records", list}};
    }
    return d;
}

Document dos_document(const RunConfig& c) {
    const Flux flux = make_flux(c.p, c.q);
    const double lt = lambda_tilde(c.lambda, flux.q());
    const auto profile = make_density_profile(lt);
    const int samples = c.grid.value_or(kDefaultDosGrid);
    const double width = profile.support_half_width;

    Document d;
    d.table.columns = {"section", "x", "value"};
    json density = json::array();
    for (int i = 0; i < samples; ++i) {
        const double s = i + 1 == samples ? width : -width + 2.0 * width * i / (samples - 1);
        const double rho = profile(s);
        density.push_back({{"s", s}, {"rho", rho}});
        d.table.rows.push_back({"density", s, rho});
    }
    json moments = json::array();
    for (int k = 0; k <= 5; ++k) {
        const double m = exact_moment_lambda(k, lt);
        moments.push_back({{"k", k}, {"exact", m}});
        d.table.rows.push_back({"moment", k, m});
    }
    d.json = {{"p", flux.p()},
              {"q", flux.q()},
              {"lambda", c.lambda},
              {"lambda_tilde", lt},
              {"support_half_width", width},
              {"density", density},
              {"moments", moments}};
    return d;
}

Document series_document(const RunConfig& c) {
    const Flux flux = make_flux(c.p, c.q);
    const std::optional<double> s = c.kind == TraceKind::PlusMinusS ? std::optional<double>(c.s.front()) : std::nullopt;
    const int n_max = c.n_max ? *c.n_max : *c.n;
    const auto coeffs = trace_series(flux, c.lambda, c.kind, s, n_max);
    Document d;
    d.json = {{"p", flux.p()},
              {"q", flux.q()},
              {"lambda", c.lambda},
              {"kind", std::string(to_string(c.kind))},
              {"s", nullable(s)},
              {"coefficients", coeffs}};
    d.table.columns = {"n", "coefficient"};
    for (std::size_t n = 0; n < coeffs.size(); ++n) d.table.rows.push_back({json(static_cast<std::int64_t>(n)), json(coeffs[n])});
    return d;
}

struct Check {
    std::string name;
    double tolerance;
    double max_deviation = 0.0;
    void observe(double dev) { max_deviation = std::max(max_deviation, dev); }
    bool passed() const { return max_deviation <= tolerance; }
};

Document verify_document(const RunConfig& c, std::vector<std::string>& warnings) {
    const Flux flux = make_flux(c.p, c.q);
    const double lambda = c.lambda;
    const int n_max = c.n_max.value_or(c.n.value_or(kDefaultVerifyNMax));
    const int q = flux.q();
    const auto poly = chambers_recursive(flux, lambda);
    const auto nested = chambers_nested(flux, lambda);
    const double width = poly.spectral_half_width();
    const double lt = lambda_tilde(lambda, q);
    const int threads = worker_count();

    std::vector<double> svals = c.s;
    if (svals.empty()) svals = {0.0, 1.0, 0.5 * width, width};

    std::vector<Check> checks;
    auto add = [&](std::string name, double tol) -> Check& {
        checks.push_back({std::move(name), tol});
        return checks.back();
    };

    {
        auto& ck = add("coefficients.recursive-vs-nested", 1e-9);
        for (std::size_t j = 0; j < poly.a.size(); ++j) ck.observe(rel_dev(poly.a[j], nested.a[j]));
    }
    if (q >= 2) {
        auto& ck = add("coefficients.a2-identity", 1e-9);
        ck.observe(rel_dev(poly.a[1], q * (1.0 + lambda * lambda / 4.0)));
    }
    {
        auto& ck = add("traces.bz-oracle", 1e-8);
        for (int n = 0; n <= n_max; n += 2)
            ck.observe(rel_dev(almost_mathieu_trace(poly, n), bz_trace(flux, lambda, n, n + 1, threads)));
    }
    {
        auto& ck = add("traces.walk-oracle", 1e-8);
        const int cap = WalkOptions{}.cap;
        if (n_max > cap)
            warnings.push_back("walk oracle limited to n <= " + std::to_string(cap));
        for (int n = 0; n <= std::min(n_max, cap); n += 2)
            ck.observe(rel_dev(almost_mathieu_trace(poly, n), walk_trace(flux, lambda, n)));
    }
    {
        auto& ck = add("traces.series", 1e-10);
        const auto mb = trace_series(flux, lambda, TraceKind::MidBand, std::nullopt, n_max);
        const auto fq = trace_series(flux, lambda, TraceKind::FullQuantum, std::nullopt, n_max);
        for (int n = 0; n <= n_max; ++n) {
            ck.observe(rel_dev(mb[n], midband_trace(poly, n)));
            ck.observe(rel_dev(fq[n], almost_mathieu_trace(poly, n)));
        }
        for (double s : svals) {
            const auto ps = trace_series(flux, lambda, TraceKind::PlusMinusS, s, n_max);
            for (int n = 0; n <= n_max; ++n) ck.observe(rel_dev(ps[n], pm_s_trace(poly, n, s)));
        }
    }
    {
        auto& ck = add("traces.newton-power-sums", 1e-9);
        for (int n = 0; n <= n_max; n += 2) {
            ck.observe(rel_dev(midband_trace(poly, n), newton_trace(poly, n, std::nullopt)));
            for (double s : svals) ck.observe(rel_dev(pm_s_trace(poly, n, s), newton_trace(poly, n, s)));
        }
    }
    {
        auto& ck = add("traces.point-spectrum-roots", 1e-8);
        for (double s : svals) {
            if (std::abs(s) > width) continue;
            const auto plus = point_spectrum_roots(flux, lambda, s, +1);
            const auto minus = point_spectrum_roots(flux, lambda, s, -1);
            for (int n = 0; n <= n_max; n += 2)
                ck.observe(rel_dev((power_sum(plus, n) + power_sum(minus, n)) / (2.0 * q), pm_s_trace(poly, n, s)));
        }
    }
    {
        auto& ck = add("traces.aubry-duality", 1e-9);
        const auto dual = chambers_recursive(flux, 4.0 / lambda);
        for (int n = 0; n <= n_max; n += 2)
            ck.observe(rel_dev(almost_mathieu_trace(poly, n),
                               std::pow(lambda / 2.0, n) * almost_mathieu_trace(dual, n)));
    }
    {
        auto& ck = add("traces.midband-coincidence", 0.0);
        for (int n = 0; n <= n_max; n += 2)
            if (q > n / 2) ck.observe(std::abs(almost_mathieu_trace(poly, n) - midband_trace(poly, n)));
    }
    {
        auto& exact = add("dos.point-trace-exact", 1e-12);
        for (int n = 0; n <= n_max; n += 2)
            exact.observe(rel_dev(integrate_point_traces_exact(flux, lambda, n), almost_mathieu_trace(poly, n)));
        auto& quad = add("dos.point-trace-quadrature", 1e-5);
        for (int n = 0; n <= n_max; n += 2)
            quad.observe(rel_dev(integrate_point_traces(flux, lambda, n, c.quadrature_nodes),
                                 almost_mathieu_trace(poly, n)));
    }
    {
        auto& ck = add("dos.moments", 1e-5);
        const auto profile = make_density_profile(lt);
        for (int k = 0; k <= 6; ++k) ck.observe(rel_dev(moment(profile, k), exact_moment_lambda(k, lt)));
    }
    if (q <= 8) {
        auto& ck = add("traces.sum-rule", 1e-8);
        for (int k = 0; k <= 2; ++k) {
            const double cb = to_double(binomial(2 * k, k));
            ck.observe(rel_dev(chambers_power_trace(flux, 2 * k), cb * cb));
        }
    }

    Document d;
    bool all = true;
    json list = json::array();
    d.table.columns = {"name", "passed", "max_deviation", "tolerance"};
    for (const auto& ck : checks) {
        all = all && ck.passed();
        list.push_back(
            {{"name", ck.name}, {"passed", ck.passed()}, {"max_deviation", ck.max_deviation}, {"tolerance", ck.tolerance}});
        d.table.rows.push_back({ck.name, ck.passed(), ck.max_deviation, ck.tolerance});
    }
    d.json = {{"p", flux.p()}, {"q", q},           {"lambda", lambda},
              {"n_max", n_max}, {"passed", all}, {"checks", list}};
    d.verification_failed = !all;
    return d;
}

void validate(const RunConfig& c) {
    (void)make_flux(c.p, c.q);
    (void)Coupling{c.lambda};
    if (c.n && *c.n < 0) throw std::invalid_argument("--n must be nonnegative");
    if (c.n_max && (*c.n_max < 0 || *c.n_max > kNMaxCap))
        throw std::invalid_argument("--n-max must lie in [0, " + std::to_string(kNMaxCap) + "]");
    if (c.n && *c.n > kNMaxCap) throw std::invalid_argument("--n must be at most " + std::to_string(kNMaxCap));
    if (c.grid && *c.grid < 1) throw std::invalid_argument("--grid must be positive");
    if (c.quadrature_nodes < kMinQuadratureNodes)
        throw std::invalid_argument("--nodes must be at least " + std::to_string(kMinQuadratureNodes));
    for (double s : c.s)
        if (!std::isfinite(s)) throw std::invalid_argument("--s values must be finite");

    const bool one_n = c.n.has_value() != c.n_max.has_value();
    switch (c.command) {
        case Command::Trace:
            if (!one_n) throw std::invalid_argument("trace: give exactly one of --n, --n-max");
            if (c.kind == TraceKind::PlusMinusS && c.s.empty()) throw std::invalid_argument("trace --kind pm-s: --s required");
            break;
        case Command::PointTrace:
            if (!one_n) throw std::invalid_argument("point-trace: give exactly one of --n, --n-max");
            if (c.s.empty()) throw std::invalid_argument("point-trace: --s required");
            break;
        case Command::Series:
            if (!one_n) throw std::invalid_argument("series: give exactly one of --n, --n-max");
            if (c.kind == TraceKind::PlusMinusS && c.s.size() != 1)
                throw std::invalid_argument("series --kind pm-s: exactly one --s value required");
            break;
        case Command::Dos:
            if (c.grid && *c.grid < 2) throw std::invalid_argument("dos: --grid must be at least 2");
            break;
        case Command::Coeffs:
        case Command::Verify:
            break;
    }
}

}  // namespace

std::string_view to_string(Command command) { return kCommandNames[static_cast<int>(command)]; }

std::optional<Command> parse_command(std::string_view name) {
    for (int i = 0; i < 6; ++i)
        if (kCommandNames[i] == name) return static_cast<Command>(i);
    return std::nullopt;
}

std::string emit_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += emit_cell(json(table.columns[i]));
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += emit_cell(row[i]);
        }
        out += '\n';
    }
    return out;
}

Table parse_csv(std::string_view text) {
    std::vector<std::vector<json>> lines;
    std::vector<json> current;
    std::string field;
    bool quoted = false, in_quotes = false, line_open = false;
    auto end_field = [&] {
        current.push_back(parse_cell(field, quoted));
        field.clear();
        quoted = false;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += ch;
            }
            continue;
        }
        line_open = true;
        if (ch == '"') {
            if (!field.empty() || quoted) throw std::invalid_argument("parse_csv: stray quote");
            in_quotes = quoted = true;
        } else if (ch == ',') {
            end_field();
        } else if (ch == '\n') {
            end_field();
            lines.push_back(std::move(current));
            current.clear();
            line_open = false;
        } else if (ch != '\r') {
            if (quoted) throw std::invalid_argument("parse_csv: text after closing quote");
            field += ch;
        }
    }
    if (in_quotes) throw std::invalid_argument("parse_csv: unterminated quote");
    if (line_open) {
        end_field();
        lines.push_back(std::move(current));
    }
    if (lines.empty()) throw std::invalid_argument("parse_csv: missing header");

    Table table;
    for (const auto& h : lines.front()) {
        if (!h.is_string()) throw std::invalid_argument("parse_csv: header fields must be quoted names");
        table.columns.push_back(h.get<std::string>());
    }
    for (std::size_t r = 1; r < lines.size(); ++r) {
        if (lines[r].size() != table.columns.size()) throw std::invalid_argument("parse_csv: ragged row");
        table.rows.push_back(std::move(lines[r]));
    }
    return table;
}

Document build_document(const RunConfig& config, std::vector<std::string>& warnings) {
    validate(config);
    switch (config.command) {
        case Command::Coeffs:
            return coeffs_document(config);
        case Command::Trace:
            return trace_document(config, config.kind, warnings);
        case Command::PointTrace:
            return trace_document(config, TraceKind::PlusMinusS, warnings);
        case Command::Dos:
            return dos_document(config);
        case Command::Series:
            return series_document(config);
        case Command::Verify:
            return verify_document(config, warnings);
    }
    throw std::logic_error("unreachable");
}

int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("HOFTRACE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min<long>(v, hw));
    }
    return hw;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    Document doc;
    std::vector<std::string> warnings;
    try {
        doc = build_document(config, warnings);
    } catch (const std::exception& e) {
        for (const auto& w : warnings) err << "warning: " << w << '\n';
        err << "error: " << e.what() << '\n';
        return 1;
    }
    for (const auto& w : warnings) err << "warning: " << w << '\n';

    const std::string text = config.format == Format::Json ? doc.json.dump(2) + "\n" : emit_csv(doc.table);
    if (config.output.empty()) {
        out << text;
    } else {
        std::ofstream file(config.output);
        if (!file) {
            err << "error: cannot open " << config.output << " for writing\n";
            return 1;
        }
        file << text;
    }
    if (doc.verification_failed) {
        err << "verification failed\n";
        return 2;
    }
    return 0;
}

std::optional<int> parse_command_line(int argc, const char* const* argv, RunConfig& config, std::ostream& out,
                                      std::ostream& err) {
    CLI::App app{"Trace formulas for the Hofstadter and almost Mathieu models", "hoftrace"};
    app.require_subcommand(1);

    std::string format = "json", kind, method = "partition-sum";
    std::int64_t p = config.p, q = config.q;
    int n = 0, n_max = 0, grid = 0;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--p", p, "flux numerator");
        sub->add_option("--q", q, "flux denominator");
        sub->add_option("--lambda", config.lambda, "coupling (2 is isotropic Hofstadter)");
        sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--output", config.output, "write to this file instead of stdout");
    };
    auto traces = [&](CLI::App* sub) {
        sub->add_option("--n", n, "trace power");
        sub->add_option("--n-max", n_max, "largest power");
        sub->add_option("--s", config.s, "point-spectrum parameters")->delimiter(',');
        sub->add_option("--method", method, "partition-sum, series, newton-power-sum or oracle")
            ->check(CLI::IsMember({"partition-sum", "series", "newton-power-sum", "oracle"}));
        sub->add_option("--grid", grid, "Brillouin-zone grid for the oracle method");
    };

    auto* coeffs = app.add_subcommand("coeffs", "Chambers polynomial coefficients a(2j)");
    common(coeffs);
    auto* trace = app.add_subcommand("trace", "quantum or mid-band traces");
    common(trace);
    traces(trace);
    trace->add_option("--kind", kind, "full, midband or pm-s")->check(CLI::IsMember({"full", "midband", "pm-s"}));
    auto* point = app.add_subcommand("point-trace", "traces over the roots of E^q b(1/E) = +-s");
    common(point);
    traces(point);
    auto* dos = app.add_subcommand("dos", "density of states and exact moments");
    common(dos);
    dos->add_option("--grid", grid, "number of s samples");
    auto* series = app.add_subcommand("series", "generating-function coefficients");
    common(series);
    series->add_option("--n", n, "largest power (same as --n-max)");
    series->add_option("--n-max", n_max, "largest power");
    series->add_option("--s", config.s, "point-spectrum parameter")->delimiter(',');
    series->add_option("--kind", kind, "full, midband or pm-s")->check(CLI::IsMember({"full", "midband", "pm-s"}));
    auto* verify = app.add_subcommand("verify", "cross-check every trace route against the oracles");
    common(verify);
    verify->add_option("--n-max", n_max, "largest power checked");
    verify->add_option("--s", config.s, "point-spectrum parameters")->delimiter(',');
    verify->add_option("--nodes", config.quadrature_nodes, "Gauss-Legendre nodes per panel");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    CLI::App* chosen = app.get_subcommands().front();
    config.command = *parse_command(chosen->get_name());
    config.p = p;
    config.q = q;
    config.format = format == "csv" ? Format::Csv : Format::Json;
    config.method = *parse_trace_method(method);
    if (!kind.empty()) config.kind = *parse_trace_kind(kind);
    auto given = [chosen](const char* name) {
        const CLI::Option* opt = chosen->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    if (given("--n")) config.n = n;
    if (given("--n-max")) config.n_max = n_max;
    if (given("--grid")) config.grid = grid;
    return std::nullopt;
}

}  // namespace hoftrace::cli
