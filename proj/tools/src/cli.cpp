#include "qphase/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <variant>

#include <json.hpp>

#include "qphase/bostconnes.hpp"
#include "qphase/error.hpp"
#include "qphase/hilbert.hpp"
#include "qphase/numtheory.hpp"
#include "qphase/phaselock.hpp"
#include "qphase/spectral.hpp"

#ifndef QPHASE_VERSION
#define QPHASE_VERSION "unknown"
#endif

namespace qphase::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct CommandInfo {
    Command command;
    std::string_view name;
    std::string_view help;
    std::vector<ParamSpec> params;
};

const std::vector<CommandInfo>& registry()
{
    static const std::vector<CommandInfo> table = {
        {Command::numfun, "numfun", "Single arithmetic-function value as JSON on stdout",
         {{"fn", "carmichael", "totient | carmichael | moebius | mangoldt | order | ramanujan | primitive-root"},
          {"n", "", "argument (the modulus for order and primitive-root)"},
          {"a", "", "unit for order / primitive-root, second argument for ramanujan c_n(a)"}}},
        {Command::carmichael_spectrum, "carmichael-spectrum",
         "Normalized Carmichael cumulative sum, its periodogram and log-log slope fit",
         {{"t-max", "16384", "series length"},
          {"sigma", "1.90", "normalization exponent"},
          {"f-lo", "", "lower fit frequency (default: lowest nonzero bin)"},
          {"f-hi", "", "upper fit frequency (default: Nyquist)"}}},
        {Command::kms_surface, "kms-surface", "Thermal expectation surface psi_beta(1/q)",
         {{"q-max", "40", "largest denominator"},
          {"beta-min", "0.5", "lowest beta"},
          {"beta-max", "1.5", "highest beta"},
          {"beta-steps", "41", "number of beta grid points"},
          {"layout", "long", "long | gnuplot (blank line between q blocks)"}}},
        {Command::kms_check, "kms-check", "Closed form against the Dirichlet-series oracle",
         {{"q", "5", "denominator"},
          {"p", "1", "numerator coprime to q"},
          {"beta", "2", "inverse temperature"},
          {"n-terms", "1000000", "oracle terms (rounded up to whole periods)"}}},
        {Command::staircase, "staircase", "Circle-map winding numbers over an Omega grid",
         {{"c", "0.8", "coupling, 0 <= c < 1"},
          {"omega-min", "0", "grid start"},
          {"omega-max", "1", "grid end"},
          {"points", "1001", "grid points"},
          {"n-iter", "10000", "iterations per point"},
          {"q-max", "8", "largest lock denominator reported"}}},
        {Command::adler, "adler", "RK4 trajectory of the Adler equation",
         {{"K", "1", "locking strength"},
          {"delta-omega", "2", "detuning"},
          {"phi0", "0", "initial phase"},
          {"t-end", "100", "integration time"},
          {"dt", "auto", "step; auto picks the largest allowed"},
          {"stride", "1", "write every stride-th sample"}}},
        {Command::operators_verify, "verify", "Run invariant suites and print a JSON report",
         {{"suite", "all", "operators | kms | dynamics | all"}}},
        {Command::mangoldt_map, "mangoldt-map", "Circle map with Mangoldt-modulated coupling",
         {{"omega", "0.5", "bare rotation"},
          {"c", "0.5", "base coupling"},
          {"kappa", "0.5", "modulation depth"},
          {"n-iter", "4096", "iterations"},
          {"phi0", "0", "initial phase"}}},
        {Command::operator_dump, "operator-dump", "Dump one operator or state as (row, col, re, im)",
         {{"op", "phase", "number | lowering | phase | shift | clock | mult-shift | phase-state | order-state"},
          {"q", "8", "dimension of the Z/qZ operators"},
          {"dim", "8", "dimension for number, lowering and mult-shift"},
          {"a", "3", "multiplier for shift, mult-shift and order-state"},
          {"p", "1", "index for clock and phase-state"},
          {"k", "0", "eigenstate index for order-state"},
          {"theta0", "0", "phase reference for phase and phase-state"}}},
    };
    return table;
}

const CommandInfo& info(Command c)
{
    for (const auto& entry : registry()) {
        if (entry.command == c) {
            return entry;
        }
    }
    throw std::logic_error("unregistered command");
}

std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// --- parameters --------------------------------------------------------------

class Params {
public:
    Params(const RunConfig& config) : command_(command_name(config.command))
    {
        for (const auto& param : parameters(config.command)) {
            values_[param.key] = param.default_value;
        }
        for (const auto& [key, value] : config.params) {
            if (!values_.count(key)) {
                throw DomainError(std::string(command_) + ": unknown parameter '" + key + "'");
            }
            values_[key] = value;
        }
    }

    const std::map<std::string, std::string>& all() const { return values_; }

    const std::string& str(const std::string& key) const { return values_.at(key); }

    bool given(const std::string& key) const { return !values_.at(key).empty(); }

    double real(const std::string& key) const
    {
        const auto& s = require(key);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
            throw DomainError(bad(key, "a finite number"));
        }
        return v;
    }

    std::uint64_t count(const std::string& key) const
    {
        const auto& s = require(key);
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            throw DomainError(bad(key, "a non-negative integer"));
        }
        return v;
    }

    std::int64_t integer(const std::string& key) const
    {
        const auto& s = require(key);
        std::int64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            throw DomainError(bad(key, "an integer"));
        }
        return v;
    }

    const std::string& choice(const std::string& key, std::initializer_list<std::string_view> options) const
    {
        const auto& s = require(key);
        for (auto o : options) {
            if (s == o) {
                return s;
            }
        }
        std::string list;
        for (auto o : options) {
            list += (list.empty() ? "" : ", ") + std::string(o);
        }
        throw DomainError(bad(key, "one of " + list));
    }

private:
    const std::string& require(const std::string& key) const
    {
        const auto& s = values_.at(key);
        if (s.empty()) {
            throw DomainError(std::string(command_) + ": parameter '" + key + "' is required");
        }
        return s;
    }

    std::string bad(const std::string& key, const std::string& what) const
    {
        return std::string(command_) + ": parameter '" + key + "' must be " + what + ", got '" +
               values_.at(key) + "'";
    }

    std::string_view command_;
    std::map<std::string, std::string> values_;
};

// --- artifacts ---------------------------------------------------------------

struct Meta {
    std::string command;
    std::map<std::string, std::string> params;
    std::vector<std::string> notes;

    Json json() const
    {
        Json m;
        m["command"] = command;
        m["parameters"] = Json::object();
        for (const auto& [k, v] : params) {
            m["parameters"][k] = v;
        }
        m["version"] = std::string("qphase ") + QPHASE_VERSION;
        m["seed"] = "none (deterministic)";
        if (!notes.empty()) {
            m["notes"] = notes;
        }
        return m;
    }

    void write_csv_header(std::ostream& os) const
    {
        os << "# command: " << command << "\n# parameters:";
        for (const auto& [k, v] : params) {
            os << ' ' << k << '=' << v;
        }
        os << "\n# version: qphase " << QPHASE_VERSION << "\n# seed: none (deterministic)\n";
        for (const auto& n : notes) {
            os << "# note: " << n << '\n';
        }
    }
};

using Cell = std::variant<std::monostate, std::int64_t, double>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::size_t> block_ends;  // rows after which the gnuplot layout inserts a blank line
};

std::string cell_text(const Cell& c)
{
    if (std::holds_alternative<std::int64_t>(c)) {
        return std::to_string(std::get<std::int64_t>(c));
    }
    if (std::holds_alternative<double>(c)) {
        return format_double(std::get<double>(c));
    }
    return "";
}

Json cell_json(const Cell& c)
{
    if (std::holds_alternative<std::int64_t>(c)) {
        return std::get<std::int64_t>(c);
    }
    if (std::holds_alternative<double>(c)) {
        return std::get<double>(c);
    }
    return nullptr;
}

std::ofstream open_artifact(const fs::path& path)
{
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    return os;
}

void finish(std::ofstream& os, const fs::path& path)
{
    os.flush();
    if (!os) {
        throw std::runtime_error("write to '" + path.string() + "' failed");
    }
}

class Writer {
public:
    Writer(const RunConfig& config, Meta meta, std::ostream& out)
        : dir_(config.output_path.empty() ? default_output_dir() : config.output_path),
          format_(config.format), meta_(std::move(meta)), out_(out)
    {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) {
            throw std::runtime_error("cannot create output directory '" + dir_.string() + "': " + ec.message());
        }
    }

    Meta& meta() { return meta_; }

    fs::path table(const std::string& stem, const Table& t, bool gnuplot = false)
    {
        const auto path = dir_ / (stem + (format_ == Format::csv ? ".csv" : ".json"));
        auto os = open_artifact(path);
        if (format_ == Format::csv) {
            meta_.write_csv_header(os);
            for (std::size_t i = 0; i < t.columns.size(); ++i) {
                os << (i ? "," : "") << t.columns[i];
            }
            os << '\n';
            std::size_t next_break = 0;
            for (std::size_t r = 0; r < t.rows.size(); ++r) {
                for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
                    os << (i ? "," : "") << cell_text(t.rows[r][i]);
                }
                os << '\n';
                if (gnuplot && next_break < t.block_ends.size() && t.block_ends[next_break] == r + 1) {
                    os << '\n';
                    ++next_break;
                }
            }
        } else {
            Json doc;
            doc["meta"] = meta_.json();
            doc["columns"] = t.columns;
            Json rows = Json::array();
            for (const auto& row : t.rows) {
                Json line = Json::array();
                for (const auto& c : row) {
                    line.push_back(cell_json(c));
                }
                rows.push_back(std::move(line));
            }
            doc["rows"] = std::move(rows);
            os << doc.dump(1) << '\n';
        }
        finish(os, path);
        announce(path);
        return path;
    }

    fs::path json(const std::string& stem, const Json& body)
    {
        const auto path = dir_ / (stem + ".json");
        auto os = open_artifact(path);
        Json doc;
        doc["meta"] = meta_.json();
        for (const auto& [k, v] : body.items()) {
            doc[k] = v;
        }
        os << doc.dump(1) << '\n';
        finish(os, path);
        announce(path);
        return path;
    }

    fs::path matrix_csv(const std::string& stem, const std::function<void(std::ostream&)>& body)
    {
        const auto path = dir_ / (stem + ".csv");
        auto os = open_artifact(path);
        meta_.write_csv_header(os);
        os << "row,col,re,im\n";
        body(os);
        finish(os, path);
        announce(path);
        return path;
    }

private:
    void announce(const fs::path& path) { out_ << "wrote " << path.string() << '\n'; }

    fs::path dir_;
    Format format_;
    Meta meta_;
    std::ostream& out_;
};

Meta make_meta(const RunConfig& config, const Params& params)
{
    return {std::string(command_name(config.command)), params.all(), {}};
}

// --- commands ----------------------------------------------------------------

int cmd_numfun(const Params& params, std::ostream& out)
{
    const auto& fn = params.choice("fn", {"totient", "carmichael", "moebius", "mangoldt", "order",
                                          "ramanujan", "primitive-root"});
    const auto n = params.count("n");
    Json j;
    j["n"] = n;
    if (fn == "totient") {
        j["value"] = numtheory::totient(n);
    } else if (fn == "carmichael") {
        j["value"] = numtheory::carmichael(n);
    } else if (fn == "moebius") {
        j["value"] = numtheory::moebius(n);
    } else if (fn == "mangoldt") {
        j["value"] = numtheory::mangoldt(n);
    } else if (fn == "order") {
        const auto a = params.count("a");
        j["a"] = a;
        j["value"] = numtheory::mult_order(a, n);
    } else if (fn == "primitive-root") {
        const auto a = params.count("a");
        j["a"] = a;
        j["value"] = numtheory::is_primitive_root(a, n);
    } else {
        const auto a = params.count("a");
        j["a"] = a;
        j["value"] = numtheory::ramanujan_sum(n, a);
    }
    out << j.dump() << '\n';
    return kExitOk;
}

int cmd_carmichael_spectrum(const Params& params, Writer& w, std::ostream& out)
{
    const auto t_max = params.count("t-max");
    const double sigma = params.real("sigma");
    const auto lambda = [](std::uint64_t n) { return static_cast<double>(numtheory::carmichael(n)); };

    const auto raw = spectral::cumulative_sum(lambda, t_max);
    const double growth = spectral::growth_exponent(raw);
    const auto series = spectral::normalized_cumsum(lambda, t_max, sigma);
    const auto p = spectral::periodogram(series);
    auto band = spectral::full_band(p);
    if (params.given("f-lo")) {
        band.lo = params.real("f-lo");
    }
    if (params.given("f-hi")) {
        band.hi = params.real("f-hi");
    }
    const auto fit = spectral::loglog_slope(p, band);

    w.meta().notes.push_back("raw cumulative-sum growth exponent " + format_double(growth));

    Table s{{"t", "value"}, {}, {}};
    for (std::size_t i = 0; i < series.size(); ++i) {
        s.rows.push_back({static_cast<std::int64_t>(series.origin()) + static_cast<std::int64_t>(i), series[i]});
    }
    w.table("carmichael-spectrum_series", s);

    Table pt{{"freq", "power"}, {}, {}};
    for (std::size_t k = 0; k < p.frequencies.size(); ++k) {
        pt.rows.push_back({p.frequencies[k], p.powers[k]});
    }
    w.table("carmichael-spectrum_periodogram", pt);

    Json fj;
    fj["exponent"] = fit.exponent;
    fj["intercept"] = fit.intercept;
    fj["f_lo"] = fit.band.lo;
    fj["f_hi"] = fit.band.hi;
    fj["residual_rms"] = fit.residual_rms;
    fj["n_points"] = fit.n_points;
    w.json("carmichael-spectrum_slope", fj);

    out << "growth_exponent " << format_double(growth) << "\nslope " << format_double(fit.exponent) << '\n';
    return kExitOk;
}

int cmd_kms_surface(const Params& params, Writer& w)
{
    const auto q_max = params.count("q-max");
    const auto steps = params.count("beta-steps");
    const bool gnuplot = params.choice("layout", {"long", "gnuplot"}) == "gnuplot";
    const auto betas = bostconnes::uniform_grid(params.real("beta-min"), params.real("beta-max"), steps);
    const auto surface = bostconnes::thermal_surface(q_max, betas);

    Table t{{"q", "beta", "psi"}, {}, {}};
    for (const auto& s : surface) {
        t.rows.push_back({static_cast<std::int64_t>(s.q), s.beta, s.value});
        if (t.rows.size() % betas.size() == 0) {
            t.block_ends.push_back(t.rows.size());
        }
    }
    w.table("kms-surface", t, gnuplot);
    return kExitOk;
}

int cmd_kms_check(const Params& params, Writer& w, std::ostream& out)
{
    const auto q = params.count("q");
    const auto p = params.count("p");
    const double beta = params.real("beta");
    const auto n_terms = params.count("n-terms");
    const bostconnes::ReducedFraction frac(q == 1 ? 0 : p, q);
    const double closed = bostconnes::kms_expectation(frac, beta);

    Json j;
    j["q"] = q;
    j["beta"] = beta;
    j["closed_form"] = closed;
    if (beta > 1.0) {
        const auto oracle = bostconnes::dirichlet_oracle(frac, beta, n_terms);
        j["oracle"] = oracle.partial.real();
        j["abs_diff"] = std::abs(oracle.partial - std::complex<double>(closed, 0.0));
        j["tail_bound"] = oracle.tail_bound;
    } else {
        // the Dirichlet series diverges; nothing independent to compare against
        j["oracle"] = nullptr;
        j["abs_diff"] = nullptr;
        j["tail_bound"] = nullptr;
        w.meta().notes.push_back("unverified-by-oracle: beta <= 1");
    }
    w.json("kms-check", j);
    out << j.dump() << '\n';
    return kExitOk;
}

int cmd_staircase(const Params& params, Writer& w)
{
    const auto q_max = params.integer("q-max");
    if (q_max < 1) {
        throw DomainError("staircase: q-max must be >= 1");
    }
    const auto pts = phaselock::staircase(params.real("c"), params.real("omega-min"), params.real("omega-max"),
                                          params.count("points"), params.count("n-iter"), q_max);
    Table t{{"Omega", "nu", "locked_p", "locked_q"}, {}, {}};
    for (const auto& pt : pts) {
        if (pt.locked_to) {
            t.rows.push_back({pt.Omega, pt.nu, pt.locked_to->p, pt.locked_to->q});
        } else {
            t.rows.push_back({pt.Omega, pt.nu, std::monostate{}, std::monostate{}});
        }
    }
    w.table("staircase", t);
    return kExitOk;
}

int cmd_adler(const Params& params, Writer& w, std::ostream& out)
{
    const phaselock::AdlerParams p{params.real("K"), params.real("delta-omega"), params.real("phi0")};
    const double dt = params.str("dt") == "auto"
                          ? 1e-2 / std::max({std::abs(p.K), std::abs(p.delta_omega), 1.0})
                          : params.real("dt");
    const auto stride = params.count("stride");
    if (stride == 0) {
        throw DomainError("adler: stride must be >= 1");
    }
    const auto run = phaselock::adler_integrate(p, params.real("t-end"), dt);

    Table t{{"t", "phi"}, {}, {}};
    for (std::size_t i = 0; i < run.phi.size(); i += stride) {
        t.rows.push_back({static_cast<double>(i) * run.dt, run.phi[i]});
    }
    w.meta().notes.push_back("dt " + format_double(run.dt));
    w.table("adler", t);
    out << "mean_freq " << format_double(run.mean_freq) << "\nanalytic " << format_double(phaselock::adler_mean_frequency(p))
        << '\n';
    return kExitOk;
}

int cmd_verify(const Params& params, Writer& w, std::ostream& out)
{
    const auto& suite = params.choice("suite", {"operators", "kms", "dynamics", "all"});
    const auto report = verify(suite);
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        Json e;
        e["name"] = c.name;
        e["measured"] = c.measured;
        e["relation"] = c.relation;
        e["tolerance"] = c.tolerance;
        e["pass"] = c.pass;
        checks.push_back(std::move(e));
    }
    Json body;
    body["suite"] = report.suite;
    body["pass"] = report.pass();
    body["checks"] = checks;
    w.json("verify-" + suite, body);
    out << body.dump(1) << '\n';
    return report.pass() ? kExitOk : kExitInternal;
}

int cmd_mangoldt_map(const Params& params, Writer& w, std::ostream& out)
{
    const auto run = phaselock::mangoldt_modulated_map(params.real("omega"), params.real("c"), params.real("kappa"),
                                                       params.count("n-iter"), params.real("phi0"));
    if (run.coupling_exceeds_one) {
        w.meta().notes.push_back("coupling exceeded 1 at some step; the map is not a diffeomorphism there");
    }
    Table t{{"n", "beat"}, {}, {}};
    for (std::size_t i = 0; i < run.beat.size(); ++i) {
        t.rows.push_back({run.beat.origin() + static_cast<std::int64_t>(i), run.beat[i]});
    }
    w.table("mangoldt-map", t);
    out << "winding " << format_double(run.winding) << "\ncoupling_exceeds_one "
        << (run.coupling_exceeds_one ? "true" : "false") << '\n';
    return kExitOk;
}

int cmd_operator_dump(const Params& params, Writer& w)
{
    const auto& op = params.choice("op", {"number", "lowering", "phase", "shift", "clock", "mult-shift",
                                          "phase-state", "order-state"});
    const auto q = params.count("q");
    const auto dim = params.count("dim");
    const double theta0 = params.real("theta0");

    std::optional<hilbert::ComplexMatrix> m;
    std::optional<hilbert::StateVector> v;
    if (op == "number") {
        m = hilbert::number_operator(dim);
    } else if (op == "lowering") {
        m = hilbert::lowering_E(dim);
    } else if (op == "phase") {
        m = hilbert::phase_operator(q, theta0);
    } else if (op == "shift") {
        m = hilbert::shift_mu(q, params.count("a"));
    } else if (op == "clock") {
        m = hilbert::clock_e(q, params.integer("p"));
    } else if (op == "mult-shift") {
        m = hilbert::multiplicative_shift(params.count("a"), dim);
    } else if (op == "phase-state") {
        v = hilbert::phase_state(q, params.count("p"), theta0);
    } else {
        v = hilbert::order_eigenstate(q, params.count("a"), params.count("k"));
    }

    const auto stem = "operator-dump_" + op;
    if (m) {
        w.matrix_csv(stem, [&](std::ostream& os) { hilbert::write_csv(os, *m); });
    } else {
        w.matrix_csv(stem, [&](std::ostream& os) { hilbert::write_csv(os, *v); });
    }
    return kExitOk;
}

int dispatch(const RunConfig& config, std::ostream& out)
{
    const Params params(config);
    if (config.command == Command::numfun) {
        return cmd_numfun(params, out);
    }
    Writer w(config, make_meta(config, params), out);
    switch (config.command) {
    case Command::carmichael_spectrum:
        return cmd_carmichael_spectrum(params, w, out);
    case Command::kms_surface:
        return cmd_kms_surface(params, w);
    case Command::kms_check:
        return cmd_kms_check(params, w, out);
    case Command::staircase:
        return cmd_staircase(params, w);
    case Command::adler:
        return cmd_adler(params, w, out);
    case Command::operators_verify:
        return cmd_verify(params, w, out);
    case Command::mangoldt_map:
        return cmd_mangoldt_map(params, w, out);
    case Command::operator_dump:
        return cmd_operator_dump(params, w);
    case Command::numfun:
        break;
    }
    throw std::logic_error("unhandled command");
}

} // namespace

std::string_view command_name(Command c)
{
    return info(c).name;
}

std::string_view command_help(Command c)
{
    return info(c).help;
}

std::optional<Command> parse_command(std::string_view name)
{
    if (name == "operators-verify") {
        return Command::operators_verify;
    }
    for (const auto& entry : registry()) {
        if (entry.name == name) {
            return entry.command;
        }
    }
    return std::nullopt;
}

const std::vector<Command>& all_commands()
{
    static const std::vector<Command> list = [] {
        std::vector<Command> v;
        for (const auto& entry : registry()) {
            v.push_back(entry.command);
        }
        return v;
    }();
    return list;
}

const std::vector<ParamSpec>& parameters(Command c)
{
    return info(c).params;
}

std::filesystem::path default_output_dir()
{
    const char* env = std::getenv(kOutputDirEnv);
    if (env != nullptr && *env != '\0') {
        return env;
    }
    return ".";
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    try {
        return dispatch(config, out);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

} // namespace qphase::cli
