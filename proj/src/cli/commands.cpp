#include <effd/cli.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include <effd/errors.hpp>
#include <effd/presets.hpp>
#include <effd/serialize.hpp>
#include <effd/witness_file.hpp>
#include <effd/witnesses.hpp>

namespace effd
{

namespace
{

enum class Format { json, csv };

struct RunConfig {
    long prec = 40;
    Format format = Format::json;
    std::optional<Index> schedule_cap;
    std::string out_path;
};

// JSON lines, or CSV with a fresh header whenever the column set changes.
class Emitter
{
public:
    Emitter(std::ostream &os, Format format) : os_(os), format_(format) {}

    void emit(const Json &j)
    {
        if (format_ == Format::json) {
            os_ << j.dump() << '\n';
            return;
        }
        std::vector<std::pair<std::string, std::string>> cells;
        flatten(j, "", cells);
        std::vector<std::string> keys;
        for (const auto &cell : cells) {
            keys.push_back(cell.first);
        }
        if (keys != header_) {
            if (!header_.empty()) {
                os_ << '\n';
            }
            header_ = keys;
            write_line(keys);
        }
        std::vector<std::string> values;
        for (auto &cell : cells) {
            values.push_back(std::move(cell.second));
        }
        write_line(values);
    }

private:
    static void flatten(const Json &j, const std::string &prefix, std::vector<std::pair<std::string, std::string>> &out)
    {
        if (j.is_object()) {
            for (const auto &[key, value] : j.items()) {
                flatten(value, prefix.empty() ? key : prefix + "." + key, out);
            }
            return;
        }
        std::string text;
        if (j.is_string()) {
            text = j.get<std::string>();
        } else if (j.is_array()) {
            for (std::size_t i = 0; i < j.size(); ++i) {
                text += (i ? ";" : "") + (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
            }
        } else if (!j.is_null()) {
            text = j.dump();
        }
        out.emplace_back(prefix, std::move(text));
    }

    void write_line(const std::vector<std::string> &cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) {
                os_ << ',';
            }
            const std::string &c = cells[i];
            if (c.find_first_of(",\"\n") == std::string::npos) {
                os_ << c;
            } else {
                os_ << '"';
                for (char ch : c) {
                    os_ << (ch == '"' ? "\"\"" : std::string(1, ch));
                }
                os_ << '"';
            }
        }
        os_ << '\n';
    }

    std::ostream &os_;
    Format format_;
    std::vector<std::string> header_;
};

long default_precision()
{
    const char *env = std::getenv("EFFD_PREC_DEFAULT");
    if (env == nullptr) {
        return 40;
    }
    const Rational q = [&] {
        try {
            return Rational::parse(env);
        } catch (const ParseError &) {
            throw ParseError("EFFD_PREC_DEFAULT must be a positive integer", std::nullopt, "EFFD_PREC_DEFAULT");
        }
    }();
    if (!q.is_integer() || q.sign() <= 0 || !q.numerator().fits_slong_p()) {
        throw ParseError("EFFD_PREC_DEFAULT must be a positive integer", std::nullopt, "EFFD_PREC_DEFAULT");
    }
    return q.numerator().get_si();
}

Rational parse_rational_arg(const std::string &text, const std::string &field)
{
    try {
        return Rational::parse(text);
    } catch (const ParseError &e) {
        throw ParseError(e.what(), std::nullopt, field);
    }
}

Json integer_json(const Integer &v)
{
    if (v.fits_slong_p()) {
        return v.get_si();
    }
    return v.get_str();
}

template <class T>
Json optional_json(const std::optional<T> &v)
{
    return v ? to_json(*v) : Json(nullptr);
}

// Boundary data from a polynomial file or a stream preset.
struct Source {
    std::string name;
    std::optional<AnyTrigPoly> poly;
    std::optional<CoefficientStream> stream;
};

Source load_source(const std::string &arg)
{
    if (std::filesystem::is_regular_file(arg)) {
        Source s{arg, read_trig_poly(std::filesystem::path(arg)), std::nullopt};
        if (const auto *p = std::get_if<TrigPoly>(&*s.poly)) {
            s.stream = CoefficientStream::from_poly(*p);
        }
        return s;
    }
    StreamSource preset = stream_preset(arg);
    Source s{arg, std::nullopt, preset.stream};
    if (preset.poly) {
        s.poly = *preset.poly;
    }
    return s;
}

bool is_jsonl(const std::string &arg)
{
    return std::filesystem::path(arg).extension() == ".jsonl";
}

Json load_json_file(const std::string &arg)
{
    std::ifstream in(arg);
    if (!in) {
        throw ParseError("cannot open " + arg);
    }
    return parse_json(in, arg);
}

Sigma1Input load_sigma1_input(const std::string &arg)
{
    if (std::filesystem::is_regular_file(arg)) {
        if (is_jsonl(arg)) {
            const WitnessFile file = read_witness_file(std::filesystem::path(arg));
            if (file.kind != WitnessKind::left) {
                throw InvalidWitness("sigma1 input must be a left (nondecreasing) witness file, got "
                                     + to_string(file.kind));
            }
            AlphaSource source = alphas_from_values(file.values, arg);
            return Sigma1Input{Sigma1WitnessSpec{source.alphas, 2, source.delta_bound}, source};
        }
        return sigma1_input_from_json(load_json_file(arg));
    }
    AlphaSource source = alpha_preset(arg);
    return Sigma1Input{Sigma1WitnessSpec{source.alphas, 2, source.delta_bound}, source};
}

WeakInput load_weak_input(const std::string &arg)
{
    if (std::filesystem::is_regular_file(arg)) {
        if (is_jsonl(arg)) {
            const WitnessFile file = read_witness_file(std::filesystem::path(arg));
            std::vector<Rational> d;
            for (std::size_t i = 1; i < file.values.size(); ++i) {
                d.push_back(file.values[i] - file.values[i - 1]);
            }
            if (d.empty()) {
                d.push_back(Rational(0));
            }
            DeltaSource source = deltas_from_values(d, arg);
            if (file.variation_bound) {
                source.variation_bound = *file.variation_bound;
            }
            WeakWitnessSpec spec{source.deltas, source.variation_bound, source.k4};
            return WeakInput{spec, source};
        }
        return weak_input_from_json(load_json_file(arg));
    }
    DeltaSource source = delta_preset(arg);
    WeakWitnessSpec spec{source.deltas, source.variation_bound, source.k4};
    return WeakInput{spec, source};
}

template <Coefficient C>
std::vector<C> ball_or_exact_prefix(const BasicTrigPoly<C> &p, Index N)
{
    std::vector<C> out;
    out.reserve(N);
    C acc{};
    for (Index n = 1; n <= N; ++n) {
        const C a = p.cos_coeff(n);
        const C b = p.sin_coeff(n);
        acc = acc + C(Rational(Integer(n))) * (detail::square(a) + detail::square(b)) / C(2);
        out.push_back(acc);
    }
    return out;
}

void cmd_energy(const RunConfig &, Emitter &emit, const std::string &arg, std::optional<Index> n_opt,
                std::optional<std::string> threshold)
{
    const Source src = load_source(arg);
    if (src.poly) {
        std::visit(
            [&](const auto &p) {
                const Index N = n_opt.value_or(std::max<Index>(p.degree(), 1));
                const auto table = ball_or_exact_prefix(p, N);
                for (Index n = 1; n <= N; ++n) {
                    emit.emit(Json{{"N", n}, {"E_N", to_json(table[n - 1])}});
                }
                Json summary{{"summary", "energy"},
                             {"source", src.name},
                             {"energy", to_json(dirichlet_energy(p))},
                             {"h12_norm_sq", to_json(h12_norm_sq(p))},
                             {"l2_norm_sq", to_json(l2_norm_sq(p))},
                             {"degree", p.degree()},
                             {"stabilization_index", p.degree()}};
                emit.emit(summary);
            },
            *src.poly);
        return;
    }
    const Index N = n_opt.value_or(100);
    const std::vector<Rational> table = energy_prefix_table(*src.stream, N);
    for (Index n = 1; n <= N; ++n) {
        emit.emit(Json{{"N", n}, {"E_N", to_json(table[n - 1])}});
    }
    Json summary{{"summary", "energy"}, {"source", src.name}, {"N", N}, {"E_N", to_json(table.back())},
                 {"limit", "unavailable"},  {"modulus", "unavailable"}};
    if (threshold) {
        const Rational t = parse_rational_arg(*threshold, "threshold");
        const auto crossing = energy_threshold_crossing(*src.stream, t, N);
        summary["threshold"] = to_json(t);
        summary["threshold_crossing"] = crossing ? Json(*crossing) : Json(nullptr);
    }
    emit.emit(summary);
}

void cmd_poisson(const RunConfig &cfg, Emitter &emit, const std::string &arg, const std::string &r_text,
                 const std::string &theta_text)
{
    const Source src = load_source(arg);
    if (!src.poly) {
        throw DomainError("poisson needs polynomial boundary data; use poisson-seq for streams");
    }
    const Rational r = parse_rational_arg(r_text, "r");
    const PiAngle theta{parse_rational_arg(theta_text, "theta")};
    const CertifiedEvaluation ev =
        std::visit([&](const auto &p) { return interior_solve(p, r, theta, cfg.prec); }, *src.poly);
    Json budget = Json::object();
    for (const auto &[name, bound] : ev.budget) {
        budget[name] = to_json(bound);
    }
    emit.emit(Json{{"command", "poisson"},
                   {"source", src.name},
                   {"r", to_json(r)},
                   {"theta_over_pi", to_json(theta.multiple)},
                   {"method", "exact-series"},
                   {"value", to_json(ev.value)},
                   {"budget", budget}});
}

void cmd_poisson_seq(const RunConfig &cfg, Emitter &emit, const std::string &arg, const std::string &theta_text,
                     Index k_from, Index k_to)
{
    if (k_from < 1 || k_to < k_from) {
        throw DomainError("need 1 <= k-from <= k-to");
    }
    const Source src = load_source(arg);
    const PiAngle theta{parse_rational_arg(theta_text, "theta")};
    const Index cap = cfg.schedule_cap.value_or(default_schedule_cap);
    std::vector<PoissonRow> rows;
    std::optional<Integer> k1;
    if (src.stream) {
        rows = poisson_rows(*src.stream, theta, k_from, k_to, cfg.prec, cap);
        k1 = src.stream->k1();
    } else {
        const auto stream = BallCoefficientStream::from_poly(std::get<BallTrigPoly>(*src.poly));
        rows = poisson_rows(stream, theta, k_from, k_to, cfg.prec, cap);
        k1 = stream.k1();
    }
    for (const PoissonRow &row : rows) {
        emit.emit(to_json(row));
    }
    emit.emit(Json{{"summary", "poisson-seq"},
                   {"source", src.name},
                   {"theta_over_pi", to_json(theta.multiple)},
                   {"K1", k1 ? integer_json(*k1) : Json(nullptr)},
                   {"modulus", "unavailable"}});
}

void write_poly(const RunConfig &cfg, Json &report, const BallTrigPoly &poly)
{
    if (cfg.out_path.empty()) {
        report["poly"] = to_json(poly);
        return;
    }
    std::ofstream file(cfg.out_path);
    if (!file) {
        throw DomainError("cannot write " + cfg.out_path);
    }
    file << to_json(poly).dump() << '\n';
    report["poly_file"] = cfg.out_path;
}

void cmd_witness_sigma1(const RunConfig &cfg, Emitter &emit, const std::string &arg, Index K)
{
    const Sigma1Input input = load_sigma1_input(arg);
    const Sigma1Witness w = sigma1_witness(input.spec, K, cfg.prec);
    Json report{{"witness", "sigma1"},
                {"input", input.source.name},
                {"K", K},
                {"m0", input.spec.m0},
                {"prec", cfg.prec},
                {"packets", Json::array({w.first_packet, w.last_packet})},
                {"target", to_json(w.target)},
                {"h12_norm_sq", to_json(w.h12_norm_sq)},
                {"telescoping_check", w.h12_norm_sq.contains(w.target)},
                {"C1", optional_json(w.c1)},
                {"sup_tail_bound", optional_json(w.sup_tail_bound)},
                {"terms", w.poly.cos_terms().size()}};
    write_poly(cfg, report, w.poly);
    emit.emit(report);
}

void cmd_witness_weak(const RunConfig &cfg, Emitter &emit, const std::string &arg, Index K)
{
    WeakInput input = load_weak_input(arg);
    if (cfg.schedule_cap) {
        input.spec.k_cap = *cfg.schedule_cap;
    }
    const WeakWitness w = weak_witness(input.spec, K, cfg.prec);
    Json degrees = Json::array();
    for (const Integer &M : w.degrees) {
        degrees.push_back(integer_json(M));
    }
    Json report{{"witness", "weak"},
                {"input", input.source.name},
                {"K", K},
                {"prec", cfg.prec},
                {"schedule", input.spec.schedule.describe()},
                {"degrees", degrees},
                {"partial_sum", to_json(w.partial_sum)},
                {"value_at_zero", to_json(w.value_at_zero)},
                {"normalization_check", w.value_at_zero.contains(w.partial_sum)},
                {"h12_norm_sq", to_json(w.h12_norm_sq)},
                {"sup_tail_bound", to_json(w.sup_tail_bound)},
                {"h12_tail_bound", optional_json(w.h12_tail_bound)},
                {"K3", integer_json(w.k3)},
                {"K4", integer_json(w.k4)},
                {"K5", w.k5 ? integer_json(*w.k5) : Json(nullptr)},
                {"K5_over_K", optional_json(w.k5_over_k)}};
    write_poly(cfg, report, w.poly);
    emit.emit(report);
}

void cmd_constants(const RunConfig &cfg, Emitter &emit, std::optional<std::string> sup_delta,
                   std::optional<std::string> k4_text)
{
    std::optional<Rational> d;
    if (sup_delta) {
        d = parse_rational_arg(*sup_delta, "sup-delta");
    }
    std::optional<Integer> k4;
    if (k4_text) {
        const Rational q = parse_rational_arg(*k4_text, "K4");
        if (!q.is_integer() || q.sign() < 0) {
            throw ParseError("K4 must be a natural number", std::nullopt, "K4");
        }
        k4 = q.numerator();
    }
    const WitnessConstants c = constants(cfg.prec, d, k4);
    auto exact = [&](const std::string &name, const Rational &v, const std::string &definition) {
        emit.emit(Json{{"name", name}, {"exact", to_json(v)}, {"lower", to_json(v)}, {"upper", to_json(v)},
                       {"definition", definition}});
    };
    auto enclosed = [&](const std::string &name, const Ball &v, const std::string &definition) {
        emit.emit(Json{{"name", name}, {"exact", nullptr}, {"lower", to_json(v.lower())}, {"upper", to_json(v.upper())},
                       {"definition", definition}});
    };
    exact("C0", c.c0, "1/4 * sum_{r=1}^{10} 1/r^2; dirichlet_energy(phi_m) = C0 m^4");
    exact("C_phi", c.c_phi, "sum_{l=1}^{10} 1/l; sup |phi_m| <= C_phi");
    enclosed("K3_value", c.k3_value, "1/(2 ln^2 2) + 1/ln 2, certified enclosure");
    exact("K3", Rational(c.k3), "smallest natural >= K3_value");
    if (c.c1) {
        enclosed("C1", *c.c1, "(C_phi / sqrt(C0)) * sqrt(sup_m d_m) with sup_m d_m = " + c.sup_delta->to_string());
    }
    if (c.k4) {
        exact("K4", Rational(*c.k4), "given bound on max |d_n|");
        exact("K5", Rational(*c.k5), "smallest natural >= K3 K4 / ln 2");
    }
}

void cmd_demo(const RunConfig &, Emitter &emit, const std::string &arg, Index max_packet)
{
    const Sigma1Input input = load_sigma1_input(arg);
    const Index m0 = input.spec.m0;
    if (max_packet < m0 || max_packet >= (Index{1} << 16)) {
        throw DomainError("max-packet must lie in [m0, 65535]");
    }
    const LeftComputableReal energy = sigma1_energy_approximants(input.spec);
    std::vector<Index> packets;
    for (Index m = m0; m < max_packet; m *= 2) {
        packets.push_back(m);
    }
    packets.push_back(max_packet);
    Rational last;
    for (const Index m : packets) {
        const Index N = m * m * m * m + harmonic_packet_width;
        last = energy.at(N);
        Json row{{"packet", m}, {"N", N}, {"E_N", to_json(last)}};
        if (input.source.limit) {
            const Rational gap = *input.source.limit - last;
            row["gap_to_limit"] = to_json(gap);
            row["achieved_bits"] = gap.is_zero() ? Json("exact") : Json(-ceil_log2(gap));
        } else {
            row["gap_to_limit"] = nullptr;
            row["achieved_bits"] = nullptr;
        }
        emit.emit(row);
    }
    emit.emit(Json{{"summary", "demo-noneffective"},
                   {"input", input.source.name},
                   {"final_E_N", to_json(last)},
                   {"limit", optional_json(input.source.limit)},
                   {"modulus", "unavailable"},
                   {"note", "E_N are certified lower bounds; no error bound is derived for a left-computable input"}});
}

int report_error(std::ostream &err, const char *kind, const std::string &message, int code)
{
    err << Json{{"error", kind}, {"message", message}}.dump() << '\n';
    return code;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Certified Dirichlet energies, Poisson evaluations and witness constructions", "effd"};
    app.require_subcommand(1);

    std::optional<long> prec;
    std::string format = "json";
    std::optional<Index> schedule_cap;
    std::string out_path;
    app.add_option("--prec", prec, "Precision exponent M (results to 2^-M); default 40 or $EFFD_PREC_DEFAULT")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--schedule-cap", schedule_cap, "Largest schedule index k")->check(CLI::PositiveNumber);
    app.add_option("--out", out_path, "Output file (the polynomial for witness, the report otherwise)");

    std::function<void(const RunConfig &, Emitter &)> action;

    auto *energy = app.add_subcommand("energy", "E_N table and norms for a polynomial file or stream preset");
    energy->fallthrough();
    std::string energy_source;
    std::optional<Index> energy_n;
    std::optional<std::string> energy_threshold;
    energy->add_option("source", energy_source, "Polynomial file or stream preset")->required();
    energy->add_option("--N", energy_n, "Last prefix index")->check(CLI::PositiveNumber);
    energy->add_option("--threshold", energy_threshold, "Report the first N with E_N above this rational");
    energy->callback([&] {
        action = [&](const RunConfig &c, Emitter &e) { cmd_energy(c, e, energy_source, energy_n, energy_threshold); };
    });

    auto *poisson = app.add_subcommand("poisson", "Harmonic extension of a polynomial at r e^{i theta}");
    poisson->fallthrough();
    std::string poisson_source;
    std::string poisson_r;
    std::string poisson_theta = "0";
    poisson->add_option("source", poisson_source, "Polynomial file or finite preset")->required();
    poisson->add_option("--r", poisson_r, "Radius in [0, 1), rational")->required();
    poisson->add_option("--theta", poisson_theta, "Angle in units of pi, rational");
    poisson->callback([&] {
        action = [&](const RunConfig &c, Emitter &e) { cmd_poisson(c, e, poisson_source, poisson_r, poisson_theta); };
    });

    auto *seq = app.add_subcommand("poisson-seq", "Scheduled partial sums x_k at r_k = 1 - 1/k, M_k = k^2 - k");
    seq->fallthrough();
    std::string seq_source;
    std::string seq_theta = "0";
    Index k_from = 2;
    Index k_to = 12;
    seq->add_option("source", seq_source, "Polynomial file or stream preset")->required();
    seq->add_option("--theta", seq_theta, "Angle in units of pi, rational");
    seq->add_option("--k-from", k_from, "First k")->check(CLI::PositiveNumber);
    seq->add_option("--k-to", k_to, "Last k")->check(CLI::PositiveNumber);
    seq->callback([&] {
        action = [&](const RunConfig &c, Emitter &e) { cmd_poisson_seq(c, e, seq_source, seq_theta, k_from, k_to); };
    });

    auto *witness = app.add_subcommand("witness", "Construct a witness polynomial");
    witness->fallthrough();
    witness->require_subcommand(1);
    std::string witness_spec;
    Index witness_k = 0;
    auto *sigma1 = witness->add_subcommand("sigma1", "Energy witness from a nondecreasing alpha sequence");
    sigma1->fallthrough();
    sigma1->add_option("spec", witness_spec, "Spec file (.json or .jsonl) or alpha preset")->required();
    sigma1->add_option("--K", witness_k, "Last packet index")->required();
    sigma1->callback([&] {
        action = [&](const RunConfig &c, Emitter &e) { cmd_witness_sigma1(c, e, witness_spec, witness_k); };
    });
    auto *weak = witness->add_subcommand("weak", "Boundary-value witness from a bounded-variation sequence");
    weak->fallthrough();
    weak->add_option("spec", witness_spec, "Spec file (.json or .jsonl) or delta preset")->required();
    weak->add_option("--K", witness_k, "Number of terms")->required();
    weak->callback([&] {
        action = [&](const RunConfig &c, Emitter &e) { cmd_witness_weak(c, e, witness_spec, witness_k); };
    });

    auto *consts = app.add_subcommand("constants", "Exact and certified constants of the constructions");
    consts->fallthrough();
    std::optional<std::string> sup_delta;
    std::optional<std::string> k4;
    consts->add_option("--sup-delta", sup_delta, "sup_m d_m, for C1");
    consts->add_option("--K4", k4, "Bound on max |d_n|, for K5");
    consts->callback([&] { action = [&](const RunConfig &c, Emitter &e) { cmd_constants(c, e, sup_delta, k4); }; });

    auto *demo = app.add_subcommand("demo-noneffective", "Energy lower bounds of a sigma1 witness, packet by packet");
    demo->fallthrough();
    std::string demo_spec;
    Index max_packet = 16384;
    demo->add_option("spec", demo_spec, "Spec file or alpha preset")->required();
    demo->add_option("--max-packet", max_packet, "Last packet reported");
    demo->callback([&] { action = [&](const RunConfig &c, Emitter &e) { cmd_demo(c, e, demo_spec, max_packet); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_parse_error;
    }

    try {
        RunConfig cfg;
        cfg.prec = prec.value_or(default_precision());
        cfg.format = format == "csv" ? Format::csv : Format::json;
        cfg.schedule_cap = schedule_cap;
        const bool report_to_file = !out_path.empty() && !witness->parsed();
        if (!report_to_file) {
            cfg.out_path = out_path;
        }
        std::ofstream file;
        if (report_to_file) {
            file.open(out_path);
            if (!file) {
                throw DomainError("cannot write " + out_path);
            }
        }
        Emitter emitter(report_to_file ? static_cast<std::ostream &>(file) : out, cfg.format);
        action(cfg, emitter);
        return exit_ok;
    } catch (const ParseError &e) {
        return report_error(err, "parse_error", e.what(), exit_parse_error);
    } catch (const ScheduleOverflow &e) {
        return report_error(err, "schedule_overflow", e.what(), exit_schedule_overflow);
    } catch (const InvalidWitness &e) {
        return report_error(err, "invalid_witness", e.what(), exit_invalid_witness);
    } catch (const DomainError &e) {
        return report_error(err, "domain_error", e.what(), exit_domain_error);
    } catch (const std::exception &e) {
        return report_error(err, "error", e.what(), exit_failure);
    }
}

} // namespace effd
