#include "ktors/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ktors/bounds.hpp"
#include "ktors/serialization.hpp"

namespace ktors::cli {

namespace {

std::string command_name(Command c) {
    switch (c) {
    case Command::snf: return "snf";
    case Command::homology: return "homology";
    case Command::gabber_verify: return "gabber-verify";
    case Command::zeta: return "zeta";
    case Command::volume: return "volume";
    case Command::gamma: return "gamma";
    case Command::bound: return "bound";
    case Command::compare: return "compare";
    }
    return "?";
}

Json config_to_json(const RunConfig& c) {
    Json j;
    j["command"] = command_name(c.command);
    j["input"] = c.input_path ? Json(*c.input_path) : Json(nullptr);
    j["format"] = c.format == OutputFormat::json ? "json" : "csv";
    j["precision"] = c.precision;
    j["alpha"] = c.alpha ? Json(*c.alpha) : Json(nullptr);
    j["delta"] = c.delta ? Json(*c.delta) : Json(nullptr);
    j["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
    j["m"] = c.m;
    j["n"] = c.n;
    j["N"] = c.N;
    j["d"] = c.d;
    j["s"] = c.s;
    j["trials"] = c.trials;
    j["delta_max"] = c.delta_max;
    j["v"] = c.v;
    j["dim"] = c.dim;
    return j;
}

Json read_json_file(const std::optional<std::string>& path) {
    if (!path) {
        throw std::invalid_argument("this command needs --input PATH");
    }
    std::ifstream in(*path);
    if (!in) {
        throw std::invalid_argument("cannot open " + *path);
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw FormatError(*path + ": " + e.what());
    }
}

template <typename T>
T single(const std::vector<T>& values, const char* flag) {
    if (values.size() != 1) {
        throw std::invalid_argument(std::string("expected exactly one value for ") + flag);
    }
    return values.front();
}

GelanderConstants constants_of(const RunConfig& c) {
    return GelanderConstants(c.alpha.value_or(1.0), c.delta.value_or(1.0));
}

std::string join(const std::vector<Integer>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        s += (i ? ";" : "") + integer_to_string(xs[i]);
    }
    return s;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void emit(const RunConfig& c, std::ostream& out, Json report, const std::string& csv) {
    if (c.format == OutputFormat::csv) {
        out << csv;
        return;
    }
    Json doc;
    doc["config"] = config_to_json(c);
    for (auto& [key, value] : report.items()) {
        doc[key] = value;
    }
    out << doc.dump(2) << '\n';
}

void run_snf(const RunConfig& c, std::ostream& out) {
    const IntMatrix a = matrix_from_json(read_json_file(c.input_path));
    const SmithForm s = smith_normal_form(a);
    Json j{{"rows", a.rows()}, {"cols", a.cols()}};
    const Json smith = smith_to_json(s);
    for (auto& [key, value] : smith.items()) {
        j[key] = value;
    }
    std::ostringstream csv;
    csv << "rows,cols,rank,invariant_factors\n"
        << a.rows() << ',' << a.cols() << ',' << s.rank << ',' << join(s.invariant_factors) << '\n';
    emit(c, out, std::move(j), csv.str());
}

void run_homology(const RunConfig& c, std::ostream& out) {
    const SimplicialComplex k = complex_from_json(read_json_file(c.input_path));
    std::vector<std::pair<std::size_t, HomologyGroup>> groups;
    if (!c.n.empty()) {
        const std::size_t n = single(c.n, "--n");
        groups.emplace_back(n, homology(k, n));
    } else {
        auto all = homology_all(k);
        for (std::size_t n = 0; n < all.size(); ++n) {
            groups.emplace_back(n, std::move(all[n]));
        }
    }
    std::ostringstream csv;
    csv << "n,betti,torsion\n";
    Json list = Json::array();
    for (const auto& [n, h] : groups) {
        list.push_back(homology_to_json(n, h));
        csv << n << ',' << h.betti << ',' << join(h.torsion_factors) << '\n';
    }
    Json j = list.size() == 1 ? list.front() : Json{{"homology", list}};
    emit(c, out, std::move(j), csv.str());
}

void run_gabber_verify(const RunConfig& c, std::ostream& out) {
    std::vector<SimplicialComplex> complexes;
    if (c.input_path) {
        complexes.push_back(complex_from_json(read_json_file(c.input_path)));
    } else {
        if (c.dim > c.delta_max || c.v == 0) {
            throw std::invalid_argument("gabber-verify needs --v >= 1 and --delta-max >= --dim");
        }
        const std::uint64_t seed = c.seed.value_or(0);
        for (unsigned t = 0; t < c.trials; ++t) {
            complexes.push_back(random_complex(c.delta_max, c.v, c.dim, splitmix64(seed + t)));
        }
    }

    std::size_t pairs = 0, violations = 0, cap_violations = 0, valence_violations = 0;
    Integer largest_torsion = 1;
    std::ostringstream csv;
    csv << "trial,n,simplices,log_torsion,gabber_log_bound,count_cap,gabber_ok,cap_ok\n";
    for (std::size_t t = 0; t < complexes.size(); ++t) {
        const SimplicialComplex& k = complexes[t];
        const ComplexProfile p = profile(k);
        if (!c.input_path && p.delta > c.delta_max) {
            ++valence_violations;
        }
        const auto groups = homology_all(k);
        for (std::size_t n = 0; n < groups.size(); ++n) {
            ++pairs;
            const bool gabber_ok = satisfies_gabber_bound(groups[n], k.count(n), n);
            const bool cap_ok = n == 0 || within_simplex_count_cap(k.count(n), p.delta, p.v, n);
            violations += gabber_ok ? 0 : 1;
            cap_violations += cap_ok ? 0 : 1;
            largest_torsion = std::max(largest_torsion, groups[n].torsion_order());
            csv << t << ',' << n << ',' << k.count(n) << ',' << log_torsion_order(groups[n]) << ','
                << gabber_log_bound(k, n) << ',' << simplex_count_cap(p.delta, p.v, n) << ','
                << (gabber_ok ? 1 : 0) << ',' << (cap_ok ? 1 : 0) << '\n';
        }
    }
    Json j{{"complexes", complexes.size()},
           {"pairs_checked", pairs},
           {"violations", violations},
           {"count_cap_violations", cap_violations},
           {"valence_violations", valence_violations},
           {"largest_torsion_order", integer_to_string(largest_torsion)}};
    emit(c, out, std::move(j), csv.str());
}

void run_zeta(const RunConfig& c, std::ostream& out) {
    const ImagQuadField f = make_field(single(c.m, "--m"));
    const Real target = c.precision;
    const BoundedReal z = riemann_zeta(c.s, target);
    const BoundedReal l = dirichlet_L(f.discriminant(), c.s, target);
    const BoundedReal zf = dedekind_zeta(f, c.s, target);
    Json j{{"m", f.m()},
           {"discriminant", f.discriminant()},
           {"s", c.s},
           {"riemann_zeta", bounded_to_json(z)},
           {"dirichlet_L", bounded_to_json(l)},
           {"dedekind_zeta", bounded_to_json(zf)}};
    std::ostringstream csv;
    csv << "quantity,value,error\n"
        << "riemann_zeta," << to_decimal(z.value) << ',' << to_decimal(z.error) << '\n'
        << "dirichlet_L," << to_decimal(l.value) << ',' << to_decimal(l.error) << '\n'
        << "dedekind_zeta," << to_decimal(zf.value) << ',' << to_decimal(zf.error) << '\n';
    emit(c, out, std::move(j), csv.str());
}

void run_volume(const RunConfig& c, std::ostream& out) {
    const ImagQuadField f = make_field(single(c.m, "--m"));
    const Real target = c.precision;
    const BoundedReal log_a = prasad_archimedean_log_constant(c.N, ImagQuadField::degree());
    const BoundedReal product = zeta_product(f, static_cast<int>(c.N), target);
    const BoundedReal log_vol = prasad_log_volume(f, c.N, target);
    const Real half_exponent = Real(static_cast<std::uint64_t>(c.N) * c.N - 1) / 2;
    Json j{{"m", f.m()},
           {"discriminant", f.discriminant()},
           {"N", c.N},
           {"discriminant_exponent", to_decimal(half_exponent)},
           {"log_archimedean_constant", bounded_to_json(log_a)},
           {"zeta_product", bounded_to_json(product)},
           {"log_volume", bounded_to_json(log_vol)}};
    std::ostringstream csv;
    csv << "quantity,value,error\n"
        << "log_archimedean_constant," << to_decimal(log_a.value) << ',' << to_decimal(log_a.error) << '\n'
        << "zeta_product," << to_decimal(product.value) << ',' << to_decimal(product.error) << '\n'
        << "log_volume," << to_decimal(log_vol.value) << ',' << to_decimal(log_vol.error) << '\n';
    emit(c, out, std::move(j), csv.str());
}

void run_gamma(const RunConfig& c, std::ostream& out) {
    const Integer g = minkowski_gamma(c.d, c.N);
    const BoundedReal lg = log(g);
    Json j{{"d", c.d}, {"N", c.N}, {"gamma", integer_to_string(g)}, {"log_gamma", bounded_to_json(lg)}};
    std::ostringstream csv;
    csv << "d,N,gamma,log_gamma_value,log_gamma_error\n"
        << c.d << ',' << c.N << ',' << integer_to_string(g) << ',' << to_decimal(lg.value) << ','
        << to_decimal(lg.error) << '\n';
    emit(c, out, std::move(j), csv.str());
}

void run_bound(const RunConfig& c, std::ostream& out) {
    const ImagQuadField f = make_field(single(c.m, "--m"));
    const unsigned n = c.n.empty() ? 2 : single(c.n, "--n");
    const BoundReport r = ktheory_threshold(f, n, constants_of(c), c.precision);
    std::ostringstream csv;
    csv << "m,discriminant,n,N,discriminant_exponent,gamma,log_volume_value,log_volume_error,"
           "log_homology_bound_value,log_homology_bound_error,log_p_threshold_value,log_p_threshold_error,"
           "soule_log_exponent,alpha,delta\n"
        << f.m() << ',' << f.discriminant() << ',' << r.n << ',' << r.N << ',' << r.exponent << ','
        << integer_to_string(r.gamma) << ',' << to_decimal(r.log_volume_bound.value) << ','
        << to_decimal(r.log_volume_bound.error) << ',' << to_decimal(r.log_homology_bound.value) << ','
        << to_decimal(r.log_homology_bound.error) << ',' << to_decimal(r.log_p_threshold.value) << ','
        << to_decimal(r.log_p_threshold.error) << ',' << to_decimal(r.soule.exponent) << ','
        << r.consts.alpha() << ',' << r.consts.delta() << '\n';
    emit(c, out, report_to_json(r), csv.str());
}

void run_compare(const RunConfig& c, std::ostream& out) {
    const auto rows = compare_bounds(c.n, c.m, constants_of(c), c.precision);
    Json list = Json::array();
    std::ostringstream csv;
    csv << "n,m,discriminant,new_exponent,soule_exponent,log_p_threshold_value,log_p_threshold_error,"
           "soule_log_bound,winner\n";
    for (const ComparisonRow& r : rows) {
        list.push_back(Json{{"n", r.n},
                            {"m", r.m},
                            {"discriminant", r.discriminant},
                            {"new_exponent", r.new_exponent},
                            {"soule_exponent", to_decimal(r.soule_exponent)},
                            {"log_p_threshold", bounded_to_json(r.log_p_threshold)},
                            {"soule_log_bound", to_decimal(r.soule_log_bound)},
                            {"winner", r.winner()}});
        csv << r.n << ',' << r.m << ',' << r.discriminant << ',' << r.new_exponent << ','
            << to_decimal(r.soule_exponent) << ',' << to_decimal(r.log_p_threshold.value) << ','
            << to_decimal(r.log_p_threshold.error) << ',' << to_decimal(r.soule_log_bound) << ',' << r.winner()
            << '\n';
    }
    Json j{{"rows", std::move(list)}, {"disclaimer", kPlaceholderDisclaimer}};
    emit(c, out, std::move(j), csv.str());
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Explicit quantities behind torsion bounds for K-groups of imaginary quadratic fields", "ktors"};
    app.require_subcommand(1);

    std::string format = "json";
    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--precision", cfg.precision, "Target absolute error")->check(CLI::PositiveNumber);
    };
    auto field_opts = [&](CLI::App* sub) { sub->add_option("--m", cfg.m, "Squarefree m < 0 (field Q(sqrt m))"); };
    auto gelander_opts = [&](CLI::App* sub) {
        sub->add_option("--alpha", cfg.alpha, "Gelander constant alpha")->check(CLI::PositiveNumber);
        sub->add_option("--delta", cfg.delta, "Gelander constant delta")->check(CLI::PositiveNumber);
    };

    auto* snf = app.add_subcommand("snf", "Smith normal form of a matrix file");
    snf->add_option("--input", cfg.input_path, "Matrix JSON")->required();
    common(snf);

    auto* hom = app.add_subcommand("homology", "Integral homology of a complex file");
    hom->add_option("--input", cfg.input_path, "Complex JSON")->required();
    hom->add_option("--n", cfg.n, "Degree (all degrees when omitted)");
    common(hom);

    auto* gab = app.add_subcommand("gabber-verify", "Check Gabber's torsion bound on random complexes");
    gab->add_option("--input", cfg.input_path, "Verify this complex instead of random ones");
    gab->add_option("--delta-max", cfg.delta_max, "Valence cap");
    gab->add_option("--v", cfg.v, "Vertex count")->check(CLI::PositiveNumber);
    gab->add_option("--dim", cfg.dim, "Maximal simplex dimension");
    gab->add_option("--trials", cfg.trials, "Number of random complexes");
    gab->add_option("--seed", cfg.seed, "Seed for all randomness");
    common(gab);

    auto* zeta = app.add_subcommand("zeta", "zeta(s), L(s, chi_D) and zeta_F(s)");
    field_opts(zeta);
    zeta->add_option("--s", cfg.s, "Argument s >= 2");
    common(zeta);

    auto* vol = app.add_subcommand("volume", "Log covolume of PSL_N(O_F)");
    field_opts(vol);
    vol->add_option("--N", cfg.N, "Matrix size N >= 2");
    common(vol);

    auto* gam = app.add_subcommand("gamma", "Index bound gamma(d, N) = |GL_{Nd}(Z/3)|");
    gam->add_option("--N", cfg.N, "Matrix size N >= 2");
    gam->add_option("--d", cfg.d, "Field degree");
    common(gam);

    auto* bnd = app.add_subcommand("bound", "Full bound report for one field and n");
    field_opts(bnd);
    bnd->add_option("--n", cfg.n, "K-group degree n >= 2");
    gelander_opts(bnd);
    common(bnd);

    auto* cmp = app.add_subcommand("compare", "Compare thresholds with Soule's bound over a grid");
    cmp->add_option("--m", cfg.m, "Comma-separated m values")->delimiter(',');
    cmp->add_option("--n", cfg.n, "Comma-separated n values")->delimiter(',');
    cmp->add_option("--seed", cfg.seed, "Recorded for provenance");
    gelander_opts(cmp);
    common(cmp);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    cfg.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;

    const std::vector<std::pair<CLI::App*, Command>> table{
        {snf, Command::snf},       {hom, Command::homology}, {gab, Command::gabber_verify},
        {zeta, Command::zeta},     {vol, Command::volume},   {gam, Command::gamma},
        {bnd, Command::bound},     {cmp, Command::compare}};
    for (const auto& [sub, command] : table) {
        if (sub->parsed()) cfg.command = command;
    }
    if (cfg.command == Command::compare) {
        if (cmp->count("--m") == 0) cfg.m = {-1, -2, -3, -7, -11};
        if (cfg.n.empty()) cfg.n = {2, 3};
    }

    try {
        switch (cfg.command) {
        case Command::snf: run_snf(cfg, out); break;
        case Command::homology: run_homology(cfg, out); break;
        case Command::gabber_verify: run_gabber_verify(cfg, out); break;
        case Command::zeta: run_zeta(cfg, out); break;
        case Command::volume: run_volume(cfg, out); break;
        case Command::gamma: run_gamma(cfg, out); break;
        case Command::bound: run_bound(cfg, out); break;
        case Command::compare: run_compare(cfg, out); break;
        }
    } catch (const InvariantViolation& e) {
        err << "internal invariant violated: " << e.what() << '\n';
        return kExitInvariantViolation;
    } catch (const ResourceLimitError& e) {
        err << "resource limit: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInvariantViolation;
    }
    return kExitOk;
}

} // namespace ktors::cli
