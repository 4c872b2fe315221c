#include "crystal/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crystal/cf_analysis.hpp"
#include "crystal/compound_poisson.hpp"
#include "crystal/distribution.hpp"
#include "crystal/euler.hpp"
#include "crystal/lattice_io.hpp"
#include "crystal/presets.hpp"
#include "crystal/table.hpp"
#include "crystal/verify.hpp"
#include "crystal/walks.hpp"

namespace crystal::cli {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

double to_double(const std::string& s, const std::string& what)
{
    try {
        return parse_real(json(s));
    } catch (const std::exception&) {
        throw ConfigError("cannot parse " + what + " value '" + s + "'");
    }
}

RealVector parse_list(const std::string& s, const std::string& what)
{
    const auto parts = split(s, ',');
    RealVector v(static_cast<Eigen::Index>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) v[static_cast<Eigen::Index>(i)] = to_double(parts[i], what);
    return v;
}

std::vector<double> to_std(const RealVector& v)
{
    return {v.data(), v.data() + v.size()};
}

void axis_headers(Table& t, const std::string& prefix, int dim)
{
    for (int k = 1; k <= dim; ++k) t.header.push_back(prefix + std::to_string(k));
}

void push_vec(std::vector<json>& row, const RealVector& v)
{
    for (Eigen::Index k = 0; k < v.size(); ++k) row.emplace_back(v[k] + 0.0);  // no "-0"
}

void push_cell(std::vector<json>& row, const Cell& c)
{
    for (Eigen::Index k = 0; k < c.size(); ++k) row.emplace_back(c[k]);
}

// ---------------------------------------------------------------- sources

struct Source {
    std::string label;
    PeriodicRealization real;
    std::optional<json> doc;
};

Source load_source(const RunConfig& cfg)
{
    if (cfg.preset.empty() == cfg.lattice.empty())
        throw ConfigError("give exactly one of --preset or --lattice");
    if (!cfg.preset.empty()) return {cfg.preset, presets::realization(cfg.preset), std::nullopt};
    json doc = load_config_file(cfg.lattice);
    return {cfg.lattice, realization_from_json(doc), std::move(doc)};
}

VertexId resolve_vertex(const BaseGraph& base, const std::string& name)
{
    if (name.empty()) return 0;
    if (auto v = base.find_vertex(name)) return *v;
    if (std::all_of(name.begin(), name.end(), ::isdigit)) {
        const int v = std::stoi(name);
        if (v < base.num_vertices()) return v;
    }
    throw ConfigError("unknown base vertex '" + name + "'");
}

LatticePoint start_point(const Source& src)
{
    LatticePoint p{0, Cell::Zero(src.real.dim())};
    if (src.doc && src.doc->contains("start")) {
        const json& s = src.doc->at("start");
        if (s.contains("vertex")) p.base_vertex = resolve_vertex(src.real.base(), s.at("vertex").get<std::string>());
        if (s.contains("cell")) {
            const auto cells = s.at("cell").get<std::vector<std::int64_t>>();
            if (static_cast<int>(cells.size()) != src.real.dim()) throw ConfigError("start cell must have d entries");
            for (std::size_t k = 0; k < cells.size(); ++k) p.cell[static_cast<Eigen::Index>(k)] = cells[k];
        }
    }
    return p;
}

FiniteRangeWalkSpec finite_walk(const Source& src, const RunConfig& cfg)
{
    if (!cfg.preset.empty()) {
        presets::KernelOptions opts;
        opts.N = cfg.N;
        if (!cfg.weights.empty()) opts.weights = to_std(parse_list(cfg.weights, "--weights"));
        return presets::finite_walk(cfg.preset, opts);
    }
    if (!src.doc->contains("kernels"))
        throw ConfigError("lattice config has no \"kernels\" section; finite-range laws need one per base vertex");
    std::map<VertexId, KernelInput> kernels;
    for (const auto& [name, k] : src.doc->at("kernels").items()) {
        KernelInput in;
        for (const auto& p : k.at("points")) in.points.push_back(parse_real_vector(p));
        for (const auto& w : k.at("weights")) in.weights.push_back(parse_real(w));
        if (k.contains("sigma")) in.sigma = parse_real_vector(k.at("sigma"));
        kernels[resolve_vertex(src.real.base(), name)] = std::move(in);
    }
    return make_finite_range_walk(src.real, kernels, start_point(src));
}

std::pair<FiniteEulerSpec, RealVector> euler_from_json(const json& e, int dim)
{
    FiniteEulerSpec spec;
    spec.dim = e.value("dim", dim);
    for (const auto& a : e.at("a")) spec.a.push_back(parse_real_vector(a));
    RealVector sigma;
    if (e.contains("ratios")) {
        std::vector<double> ratios;
        for (const auto& r : e.at("ratios")) ratios.push_back(parse_real(r));
        auto built = euler_spec_from_ratios(ratios, spec.a);
        spec = built.first;
        sigma = built.second;
    } else {
        for (const auto& a : e.at("alpha")) spec.alpha.push_back(parse_real(a));
    }
    if (e.contains("sigma")) sigma = parse_real_vector(e.at("sigma"));
    spec.validate();
    return {spec, sigma};
}

std::pair<FiniteEulerSpec, RealVector> euler_of(const Source& src, const RunConfig& cfg)
{
    std::pair<FiniteEulerSpec, RealVector> out;
    if (!cfg.preset.empty()) {
        out = presets::euler(cfg.preset);
    } else {
        if (!src.doc->contains("euler"))
            throw ConfigError("lattice config has no \"euler\" section; compound Poisson laws need one");
        out = euler_from_json(src.doc->at("euler"), src.real.dim());
    }
    if (!cfg.sigma.empty()) out.second = parse_list(cfg.sigma, "--sigma");
    if (out.second.size() != out.first.dim) throw ConfigError("sigma must have d entries");
    return out;
}

CompoundPoissonLaw cp_law(const Source& src, const RunConfig& cfg, std::ostream& err)
{
    auto [spec, sigma] = euler_of(src, cfg);
    CompoundPoissonLaw law = compound_poisson_law(spec, sigma);
    for (const auto& w : law.warnings) err << "warning: " << w << '\n';
    return law;
}

void require_law(const RunConfig& cfg)
{
    if (cfg.law != "finite" && cfg.law != "cp")
        throw ConfigError("--law must be 'finite' or 'cp', got '" + cfg.law + "'");
}

// ---------------------------------------------------------------- zeta specs

struct ZetaSpecFile {
    std::string kind;
    json doc;
};

ZetaSpecFile load_zeta_spec(const std::string& path)
{
    json doc = load_config_file(path);
    if (!doc.contains("kind")) throw ConfigError("zeta spec needs \"kind\": finite_euler, shintani or polynomial_euler");
    return {doc.at("kind").get<std::string>(), std::move(doc)};
}

ShintaniZetaSpec shintani_from_json(const json& doc)
{
    ShintaniZetaSpec spec;
    const auto& rows = doc.at("lambda");
    const auto m = static_cast<Eigen::Index>(rows.size());
    const auto r = static_cast<Eigen::Index>(rows.at(0).size());
    spec.lambda.resize(m, r);
    for (Eigen::Index i = 0; i < m; ++i) spec.lambda.row(i) = parse_real_vector(rows.at(static_cast<std::size_t>(i))).transpose();
    spec.u = parse_real_vector(doc.at("u"));
    for (const auto& c : doc.at("c")) spec.c.push_back(parse_real_vector(c));
    const json& th = doc.at("theta");
    const std::string kind = th.at("kind").get<std::string>();
    if (kind == "finite") {
        FiniteSupportTheta f;
        for (const auto& e : th.at("entries"))
            f.entries.emplace_back(e.at("index").get<MultiIndex>(), Complex{parse_real(e.at("weight")), 0.0});
        spec.theta = std::move(f);
    } else if (kind == "poisson") {
        spec.theta = PoissonFamilyTheta{parse_real(th.at("rate")), th.value("base", std::int64_t{2}),
                                        parse_real_vector(th.at("shift"))};
    } else {
        throw ConfigError("theta kind must be 'finite' or 'poisson', got '" + kind + "'");
    }
    spec.validate();
    return spec;
}

PolynomialEulerSpec polynomial_from_json(const json& doc)
{
    PolynomialEulerSpec spec;
    spec.dim = doc.value("dim", 1);
    for (const auto& a : doc.at("a")) spec.a.push_back(parse_real_vector(a));
    std::vector<double> alpha;
    for (const auto& a : doc.at("alpha")) alpha.push_back(parse_real(a));
    if (alpha.size() != spec.a.size()) throw ConfigError("need one alpha per vector a_l");
    spec.alpha = [alpha](std::size_t l, std::uint64_t) { return alpha[l]; };
    spec.prime_cutoff = doc.value("prime_cutoff", std::uint64_t{10000});
    return spec;
}

RealVector spec_sigma(const ZetaSpecFile& z, const RunConfig& cfg)
{
    if (!cfg.sigma.empty()) return parse_list(cfg.sigma, "--sigma");
    if (z.doc.contains("sigma")) return parse_real_vector(z.doc.at("sigma"));
    throw ConfigError("no sigma: pass --sigma or put \"sigma\" in the spec file");
}

TruncationPolicy policy_of(const RunConfig& cfg)
{
    TruncationPolicy p;
    if (cfg.cutoff > 0) p.per_index_cutoff = cfg.cutoff;
    return p;
}

// ---------------------------------------------------------------- output

void emit(const Table& table, const RunConfig& cfg, std::ostream& out)
{
    if (cfg.format != "csv" && cfg.format != "json")
        throw ConfigError("--format must be 'csv' or 'json', got '" + cfg.format + "'");
    auto write = [&](std::ostream& os) {
        if (cfg.format == "csv")
            write_csv(table, os);
        else
            write_json(table, os);
    };
    if (cfg.out.empty()) {
        write(out);
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file '" + cfg.out + "'");
    write(file);
}

// ---------------------------------------------------------------- commands

int cmd_preset_list(const RunConfig& cfg, std::ostream& out)
{
    Table t{{"name", "vertices", "edges", "betti", "dim", "maximal_abelian"}, {}};
    for (const auto& name : presets::names()) {
        const auto real = presets::realization(name);
        t.add({name, real.base().num_vertices(), real.base().num_edges(), betti(real.base()), real.dim(),
               is_maximal_abelian(real.lattice())});
    }
    emit(t, cfg, out);
    return ok;
}

int cmd_lattice_info(const RunConfig& cfg, std::ostream& out)
{
    const Source src = load_source(cfg);
    const auto& base = src.real.base();
    Table t{{"property", "value"}, {}};
    t.add({"name", src.label});
    t.add({"vertices", base.num_vertices()});
    t.add({"edges", base.num_edges()});
    t.add({"betti", betti(base)});
    t.add({"dim", src.real.dim()});
    t.add({"maximal_abelian", is_maximal_abelian(src.real.lattice())});
    for (const auto& e : base.edges()) {
        const RealVector d = edge_displacement(src.real, e.id);
        std::string v;
        for (Eigen::Index k = 0; k < d.size(); ++k) v += (k ? " " : "") + format_cell(json(d[k] + 0.0));
        t.add({"edge " + e.name, base.vertex_name(e.origin) + "->" + base.vertex_name(e.terminus) + " (" + v + ")"});
    }
    emit(t, cfg, out);
    return ok;
}

int cmd_lattice_check(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const Source src = load_source(cfg);
    const auto violations = check_nondegenerate(src.real);
    Table t{{"kind", "message"}, {}};
    for (const auto& v : violations) {
        const char* kind = v.kind == ViolationKind::offset_collision ? "offset_collision"
                           : v.kind == ViolationKind::zero_edge      ? "zero_edge"
                                                                     : "duplicate_direction";
        t.add({kind, v.message});
    }
    emit(t, cfg, out);
    if (!violations.empty()) {
        err << "realization is degenerate: " << violations.size() << " violation(s)\n";
        return verification_failed;
    }
    return ok;
}

int cmd_zeta_eval(const RunConfig& cfg, std::ostream& out)
{
    Complex value;
    double tail = 0.0;
    RealVector sigma;
    auto s_of = [&](int dim) {
        RealVector t = cfg.t.empty() ? RealVector::Zero(dim) : parse_list(cfg.t, "--t");
        if (sigma.size() != dim || t.size() != dim) throw ConfigError("sigma and t must have d entries");
        return complexify(sigma, t);
    };
    if (!cfg.spec.empty()) {
        const ZetaSpecFile z = load_zeta_spec(cfg.spec);
        if (z.kind == "finite_euler") {
            auto [spec, sig] = euler_from_json(z.doc, z.doc.value("dim", 1));
            sigma = cfg.sigma.empty() ? sig : parse_list(cfg.sigma, "--sigma");
            value = finite_euler_eval(spec, s_of(spec.dim));
        } else if (z.kind == "shintani") {
            const ShintaniZetaSpec spec = shintani_from_json(z.doc);
            sigma = spec_sigma(z, cfg);
            const ZetaValue zv = shintani_eval(spec, s_of(spec.dim()), policy_of(cfg));
            value = zv.value;
            tail = zv.tail_bound;
        } else if (z.kind == "polynomial_euler") {
            PolynomialEulerSpec spec = polynomial_from_json(z.doc);
            if (cfg.cutoff > 0) spec.prime_cutoff = static_cast<std::uint64_t>(cfg.cutoff);
            sigma = spec_sigma(z, cfg);
            const ZetaValue zv = polynomial_euler_eval(spec, s_of(spec.dim));
            value = zv.value;
            tail = zv.tail_bound;
        } else {
            throw ConfigError("unknown zeta spec kind '" + z.kind + "'");
        }
    } else {
        const Source src = load_source(cfg);
        auto [spec, sig] = euler_of(src, cfg);
        sigma = sig;
        value = finite_euler_eval(spec, s_of(spec.dim));
    }
    Table t{{"re", "im", "abs", "tail_bound"}, {}};
    t.add({value.real() + 0.0, value.imag() + 0.0, std::abs(value), tail});
    emit(t, cfg, out);
    return ok;
}

LatticeDistribution kernel_law(const Source& src, const RunConfig& cfg, VertexId& x)
{
    const FiniteRangeWalkSpec walk = finite_walk(src, cfg);
    x = resolve_vertex(src.real.base(), cfg.vertex);
    if (!walk.kernels[static_cast<std::size_t>(x)])
        throw ConfigError("no step kernel for base vertex '" + src.real.base().vertex_name(x) + "'");
    return walk.kernels[static_cast<std::size_t>(x)]->law;
}

int cmd_dist_table(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    require_law(cfg);
    if (!cfg.spec.empty()) {
        const ZetaSpecFile z = load_zeta_spec(cfg.spec);
        if (z.kind != "shintani") throw ConfigError("dist table --spec needs a shintani spec");
        const ShintaniZetaSpec spec = shintani_from_json(z.doc);
        const LatticeDistribution d = shintani_distribution(spec, spec_sigma(z, cfg), policy_of(cfg));
        Table t{{}, {}};
        axis_headers(t, "x", spec.dim());
        t.header.push_back("mass");
        for (std::size_t i = 0; i < d.size(); ++i) {
            std::vector<json> row;
            push_vec(row, d.points[i]);
            row.emplace_back(d.masses[i]);
            t.add(std::move(row));
        }
        emit(t, cfg, out);
        err << "total " << d.total << ", deficit " << d.deficit() << '\n';
        return ok;
    }
    const Source src = load_source(cfg);
    const int dim = src.real.dim();
    Table t{{}, {}};
    axis_headers(t, "x", dim);
    t.header.push_back("mass");
    if (cfg.law == "finite") {
        VertexId x = 0;
        const LatticeDistribution d = kernel_law(src, cfg, x);
        t.header.push_back("vertex");
        axis_headers(t, "cell", dim);
        for (std::size_t i = 0; i < d.size(); ++i) {
            std::vector<json> row;
            push_vec(row, d.points[i]);
            row.emplace_back(d.masses[i]);
            const LatticePoint& lp = (*d.lattice_points)[i];
            row.emplace_back(src.real.base().vertex_name(lp.base_vertex));
            push_cell(row, lp.cell);
            t.add(std::move(row));
        }
    } else {
        const CompoundPoissonLaw law = cp_law(src, cfg, err);
        const BruteForcePmf pmf = brute_force_cp_pmf(law, cfg.radius);
        for (std::size_t i = 0; i < pmf.points.size(); ++i) {
            std::vector<json> row;
            push_vec(row, pmf.points[i]);
            row.emplace_back(pmf.masses[i]);
            t.add(std::move(row));
        }
        err << "deficit " << pmf.deficit << '\n';
    }
    emit(t, cfg, out);
    return ok;
}

std::vector<RealVector> grid_vectors(const RunConfig& cfg, int dim)
{
    std::vector<RealVector> out;
    for (const auto& g : parse_grid(cfg.t_grid, dim)) {
        RealVector v(dim);
        for (int k = 0; k < dim; ++k) v[k] = g[static_cast<std::size_t>(k)];
        out.push_back(std::move(v));
    }
    return out;
}

int cmd_dist_cf(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    require_law(cfg);
    std::function<Complex(const RealVector&)> f;
    int dim = 0;
    std::optional<Source> src;
    if (!cfg.spec.empty()) {
        const ZetaSpecFile z = load_zeta_spec(cfg.spec);
        if (z.kind == "shintani") {
            auto spec = std::make_shared<ShintaniZetaSpec>(shintani_from_json(z.doc));
            const RealVector sigma = spec_sigma(z, cfg);
            const TruncationPolicy pol = policy_of(cfg);
            dim = spec->dim();
            f = [spec, sigma, pol](const RealVector& t) { return characteristic_function(*spec, sigma, t, pol); };
        } else if (z.kind == "finite_euler") {
            auto [spec, sig] = euler_from_json(z.doc, z.doc.value("dim", 1));
            const RealVector sigma = cfg.sigma.empty() ? sig : parse_list(cfg.sigma, "--sigma");
            dim = spec.dim;
            f = [spec = spec, sigma](const RealVector& t) { return characteristic_function(spec, sigma, t); };
        } else {
            throw ConfigError("dist cf --spec needs a shintani or finite_euler spec");
        }
    } else {
        src.emplace(load_source(cfg));
        dim = src->real.dim();
        if (cfg.law == "finite") {
            VertexId x = 0;
            auto d = std::make_shared<LatticeDistribution>(kernel_law(*src, cfg, x));
            f = [d](const RealVector& t) { return characteristic_function(*d, t); };
        } else {
            auto law = std::make_shared<CompoundPoissonLaw>(cp_law(*src, cfg, err));
            f = [law](const RealVector& t) { return characteristic_function(law->spec, law->sigma, t); };
        }
    }
    Table t{{}, {}};
    axis_headers(t, "t", dim);
    t.header.insert(t.header.end(), {"re", "im", "abs"});
    for (const auto& tv : grid_vectors(cfg, dim)) {
        const Complex v = f(tv);
        std::vector<json> row;
        push_vec(row, tv);
        row.emplace_back(v.real() + 0.0);
        row.emplace_back(v.imag() + 0.0);
        row.emplace_back(std::abs(v));
        t.add(std::move(row));
    }
    emit(t, cfg, out);
    return ok;
}

int cmd_dist_levy(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const Source src = load_source(cfg);
    const CompoundPoissonLaw law = cp_law(src, cfg, err);
    Table t{{"direction", "order"}, {}};
    axis_headers(t, "x", law.dim());
    t.header.push_back("weight");
    for (const auto& atom : law.levy.atoms) {
        std::vector<json> row{atom.direction + 1, atom.order};
        push_vec(row, atom.location);
        row.emplace_back(atom.weight);
        t.add(std::move(row));
    }
    emit(t, cfg, out);
    err << "total Levy mass " << law.total_mass() << '\n';
    return ok;
}

void check_counts(const RunConfig& cfg)
{
    if (cfg.steps < 0) throw ConfigError("--steps must be nonnegative");
    if (cfg.paths < 0) throw ConfigError("--paths must be nonnegative");
}

int cmd_walk_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    require_law(cfg);
    check_counts(cfg);
    const Source src = load_source(cfg);
    std::vector<Trajectory> paths;
    if (cfg.law == "finite") {
        paths = simulate(finite_walk(src, cfg), cfg.steps, cfg.paths, cfg.seed, cfg.threads);
    } else {
        auto walk = make_infinite_range_walk(src.real, cp_law(src, cfg, err), start_point(src));
        paths = simulate(walk, cfg.steps, cfg.paths, cfg.seed, cfg.threads);
    }
    const int dim = src.real.dim();
    Table t{{"path", "step", "vertex"}, {}};
    axis_headers(t, "cell", dim);
    axis_headers(t, "x", dim);
    for (const auto& tr : paths) {
        for (std::size_t k = 0; k < tr.points.size(); ++k) {
            std::vector<json> row{tr.path, k, src.real.base().vertex_name(tr.points[k].base_vertex)};
            push_cell(row, tr.points[k].cell);
            push_vec(row, tr.realized[k]);
            t.add(std::move(row));
        }
    }
    emit(t, cfg, out);
    return ok;
}

CfComparison walk_comparison(const RunConfig& cfg, std::ostream& err)
{
    require_law(cfg);
    check_counts(cfg);
    if (cfg.paths < 1) throw ConfigError("--paths must be positive for a CF comparison");
    const Source src = load_source(cfg);
    const int dim = src.real.dim();
    std::vector<RealVector> samples;
    std::function<Complex(const RealVector&)> analytic;
    auto displacements = [&](const auto& walk) {
        const RealVector origin = realize(walk.realization, walk.start);
        for (const auto& p : simulate_endpoints(walk, cfg.steps, cfg.paths, cfg.seed, cfg.threads))
            samples.push_back(realize(walk.realization, p) - origin);
    };
    if (cfg.law == "finite") {
        auto walk = std::make_shared<FiniteRangeWalkSpec>(finite_walk(src, cfg));
        walk_cf(*walk, cfg.steps, RealVector::Zero(dim));  // fails early when undefined
        displacements(*walk);
        analytic = [walk, n = cfg.steps](const RealVector& t) { return walk_cf(*walk, n, t); };
    } else {
        auto walk = std::make_shared<InfiniteRangeWalkSpec>(
            make_infinite_range_walk(src.real, cp_law(src, cfg, err), start_point(src)));
        displacements(*walk);
        analytic = [walk, n = cfg.steps](const RealVector& t) { return walk_cf(*walk, n, t); };
    }
    return compare_cf(analytic, samples, grid_vectors(cfg, dim), cfg.c);
}

Table comparison_table(const CfComparison& cmp)
{
    const int dim = cmp.grid.empty() ? 0 : static_cast<int>(cmp.grid.front().size());
    Table t{{}, {}};
    axis_headers(t, "t", dim);
    t.header.insert(t.header.end(), {"analytic_re", "analytic_im", "empirical_re", "empirical_im", "abs_dev"});
    for (std::size_t i = 0; i < cmp.grid.size(); ++i) {
        std::vector<json> row;
        push_vec(row, cmp.grid[i]);
        row.insert(row.end(), {cmp.analytic[i].real() + 0.0, cmp.analytic[i].imag() + 0.0,
                               cmp.empirical[i].real() + 0.0, cmp.empirical[i].imag() + 0.0, std::abs(cmp.analytic[i] - cmp.empirical[i])});
        t.add(std::move(row));
    }
    return t;
}

int cmd_walk_cf(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const CfComparison cmp = walk_comparison(cfg, err);
    emit(comparison_table(cmp), cfg, out);
    return ok;
}

int cmd_verify_cf(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const CfComparison cmp = walk_comparison(cfg, err);
    emit(comparison_table(cmp), cfg, out);
    err << "max_abs_dev " << cmp.max_abs_dev << " threshold " << cmp.threshold << " ("
        << (cmp.passed ? "PASS" : "FAIL") << ")\n";
    return cmp.passed ? ok : verification_failed;
}

// ---------------------------------------------------------------- parser

void add_source(CLI::App* cmd, RunConfig& cfg)
{
    auto* p = cmd->add_option("--preset", cfg.preset, "line, square, triangular or hexagonal");
    auto* l = cmd->add_option("--lattice", cfg.lattice, "lattice config file (JSON with comments)");
    p->excludes(l);
}

void add_output(CLI::App* cmd, RunConfig& cfg)
{
    cmd->add_option("--format", cfg.format, "csv or json")->capture_default_str();
    cmd->add_option("--out", cfg.out, "output file (default stdout)");
}

void add_law(CLI::App* cmd, RunConfig& cfg)
{
    cmd->add_option("--law", cfg.law, "finite (Shintani step kernel) or cp (compound Poisson)")->capture_default_str();
    cmd->add_option("--N", cfg.N, "triangular kernel radius")->capture_default_str();
    cmd->add_option("--weights", cfg.weights, "comma-separated kernel weights for the first base vertex");
    cmd->add_option("--sigma", cfg.sigma, "comma-separated sigma override");
}

void add_sim(CLI::App* cmd, RunConfig& cfg)
{
    cmd->add_option("--steps", cfg.steps, "steps per path")->capture_default_str();
    cmd->add_option("--paths", cfg.paths, "number of paths")->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
    cmd->add_option("--threads", cfg.threads, "worker threads (0: all cores)")->capture_default_str();
}

}  // namespace

std::vector<std::vector<double>> parse_grid(const std::string& spec, int dim)
{
    auto axes = split(spec, ';');
    if (axes.size() == 1) axes.assign(static_cast<std::size_t>(dim), axes.front());
    if (static_cast<int>(axes.size()) != dim)
        throw ConfigError("--t-grid needs one 'lo:hi:n' per axis (or a single one), got " + std::to_string(axes.size()));
    std::vector<std::vector<double>> values;
    for (const auto& ax : axes) {
        const auto parts = split(ax, ':');
        if (parts.size() != 3) throw ConfigError("--t-grid axis '" + ax + "' is not 'lo:hi:n'");
        const double lo = to_double(parts[0], "--t-grid");
        const double hi = to_double(parts[1], "--t-grid");
        int n = 0;
        try {
            n = std::stoi(parts[2]);
        } catch (const std::exception&) {
            throw ConfigError("--t-grid point count '" + parts[2] + "' is not an integer");
        }
        if (n < 1) throw ConfigError("--t-grid point count must be positive");
        std::vector<double> v;
        for (int i = 0; i < n; ++i) v.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
        values.push_back(std::move(v));
    }
    std::vector<std::vector<double>> out{{}};
    for (const auto& axis : values) {
        std::vector<std::vector<double>> next;
        for (const auto& prefix : out)
            for (double x : axis) {
                auto p = prefix;
                p.push_back(x);
                next.push_back(std::move(p));
            }
        out = std::move(next);
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Crystal lattice random walks generated by zeta functions", "crystal"};
    app.require_subcommand(1);

    auto* lattice = app.add_subcommand("lattice", "lattice structure");
    lattice->require_subcommand(1);
    auto* l_info = lattice->add_subcommand("info", "vertices, edges, Betti number, maximality");
    auto* l_check = lattice->add_subcommand("check", "non-degeneracy of the realization");

    auto* zeta = app.add_subcommand("zeta", "zeta evaluation");
    zeta->require_subcommand(1);
    auto* z_eval = zeta->add_subcommand("eval", "evaluate a zeta spec at sigma + i t");

    auto* dist = app.add_subcommand("dist", "distributions");
    dist->require_subcommand(1);
    auto* d_table = dist->add_subcommand("table", "probability mass table");
    auto* d_cf = dist->add_subcommand("cf", "characteristic function on a t-grid");
    auto* d_levy = dist->add_subcommand("levy", "Levy measure atoms");

    auto* walk = app.add_subcommand("walk", "random walks");
    walk->require_subcommand(1);
    auto* w_sim = walk->add_subcommand("simulate", "simulate trajectories");
    auto* w_cf = walk->add_subcommand("cf", "analytic vs empirical CF of the walk");

    auto* verify = app.add_subcommand("verify", "verification");
    verify->require_subcommand(1);
    auto* v_cf = verify->add_subcommand("cf", "CF comparison with pass/fail exit code");

    auto* preset = app.add_subcommand("preset", "presets");
    preset->require_subcommand(1);
    auto* p_list = preset->add_subcommand("list", "list presets");

    for (auto* c : {l_info, l_check, z_eval, d_table, d_cf, d_levy, w_sim, w_cf, v_cf}) add_source(c, cfg);
    for (auto* c : {l_info, l_check, z_eval, d_table, d_cf, d_levy, w_sim, w_cf, v_cf, p_list}) add_output(c, cfg);
    for (auto* c : {z_eval, d_table, d_cf, d_levy, w_sim, w_cf, v_cf}) add_law(c, cfg);
    for (auto* c : {w_sim, w_cf, v_cf}) add_sim(c, cfg);
    for (auto* c : {z_eval, d_table, d_cf})
        c->add_option("--spec", cfg.spec, "zeta spec file (kind: finite_euler, shintani or polynomial_euler)");
    for (auto* c : {z_eval, d_table, d_cf}) c->add_option("--cutoff", cfg.cutoff, "truncation override");
    z_eval->add_option("--t", cfg.t, "comma-separated imaginary part of s");
    for (auto* c : {d_table, d_cf}) c->add_option("--vertex", cfg.vertex, "base vertex of the step kernel");
    d_table->add_option("--radius", cfg.radius, "support radius for the compound Poisson table")->capture_default_str();
    for (auto* c : {d_cf, w_cf, v_cf})
        c->add_option("--t-grid", cfg.t_grid, "lo:hi:n per axis, ';'-separated")->capture_default_str();
    v_cf->add_option("--c", cfg.c, "threshold constant c in c/sqrt(N)")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    try {
        if (p_list->parsed()) return cmd_preset_list(cfg, out);
        if (l_info->parsed()) return cmd_lattice_info(cfg, out);
        if (l_check->parsed()) return cmd_lattice_check(cfg, out, err);
        if (z_eval->parsed()) return cmd_zeta_eval(cfg, out);
        if (d_table->parsed()) return cmd_dist_table(cfg, out, err);
        if (d_cf->parsed()) return cmd_dist_cf(cfg, out, err);
        if (d_levy->parsed()) return cmd_dist_levy(cfg, out, err);
        if (w_sim->parsed()) return cmd_walk_simulate(cfg, out, err);
        if (w_cf->parsed()) return cmd_walk_cf(cfg, out, err);
        if (v_cf->parsed()) return cmd_verify_cf(cfg, out, err);
    } catch (const ConvergenceError& e) {
        err << "error: convergence region violated: " << e.what() << '\n';
        return usage_error;
    } catch (const ConfigError& e) {
        err << "error: configuration: " << e.what() << '\n';
        return usage_error;
    } catch (const PreconditionError& e) {
        err << "error: precondition failed: " << e.what() << '\n';
        return usage_error;
    } catch (const nlohmann::json::exception& e) {
        err << "error: malformed config: " << e.what() << '\n';
        return usage_error;
    }
    err << "error: no command given\n";
    return usage_error;
}

int run(int argc, const char* const* argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace crystal::cli
