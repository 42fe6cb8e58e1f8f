// tensorkit command line tool.
//
// Exit codes: 0 success/pass, 1 verification failure, 2 usage error,
// 3 domain error (singular matrix, coordinate singularity).

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tensorkit/coord_systems.hpp"
#include "tensorkit/einsum.hpp"
#include "tensorkit/field_ops.hpp"
#include "tensorkit/linalg.hpp"
#include "tensorkit/matrix_ops.hpp"
#include "tensorkit/random_fields.hpp"
#include "tensorkit/tensor_io.hpp"

using nlohmann::json;

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

std::string variance_string(const tk::DenseTensor& t) {
    std::string s;
    for (tk::Variance v : t.variance()) s += (v == tk::Variance::contra) ? '^' : '_';
    return s;
}

void print_tensor(const tk::DenseTensor& t, const std::string& output) {
    if (output == "json") {
        std::cout << tk::tensor_to_json(t).dump(2) << "\n";
        return;
    }
    std::cout << "dim " << t.dim() << "  variance \"" << variance_string(t) << "\"  weight "
              << t.weight() << "\n";
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        for (int i : t.unravel(flat)) std::cout << std::setw(3) << i;
        std::cout << "  " << fmt(t.components()[flat]) << "\n";
    }
}

// "name=value,name=value" or bare "value,value" in coordinate order
tk::Point parse_point(const std::string& text, const tk::CoordinateSystem& sys) {
    std::map<std::string, double> named;
    std::vector<double> positional;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        auto eq = tok.find('=');
        if (eq == std::string::npos) {
            positional.push_back(std::stod(tok));
        } else {
            named[tok.substr(0, eq)] = std::stod(tok.substr(eq + 1));
        }
    }
    if (!named.empty() && !positional.empty())
        throw tk::ShapeError("--at: mixing named and positional coordinates");
    if (!positional.empty()) {
        if (static_cast<int>(positional.size()) != sys.dim)
            throw tk::ShapeError("--at: expected " + std::to_string(sys.dim) + " coordinates");
        return positional;
    }
    tk::Point p(sys.dim);
    for (int i = 0; i < sys.dim; ++i) {
        auto it = named.find(sys.coord_names[i]);
        if (it == named.end())
            throw tk::ShapeError("--at: missing coordinate '" + sys.coord_names[i] + "'");
        p[i] = it->second;
    }
    if (static_cast<int>(named.size()) != sys.dim)
        throw tk::ShapeError("--at: unknown coordinate name present");
    return p;
}

tk::CoordinateSystem resolve_system(const std::string& name, const std::string& file) {
    if (!file.empty()) return tk::load_coordinate_system(file);
    return tk::builtin_system(name);
}

json occurrence_json(const tk::IndexOccurrence& o) {
    return {{"symbol", std::string(1, o.symbol)},
            {"position", o.position == tk::Variance::contra ? "^" : "_"}};
}

int cmd_validate(const std::string& text, const std::string& mode_name,
                 const std::string& output) {
    tk::Mode mode = mode_name == "strict" ? tk::Mode::strict : tk::Mode::cartesian;
    tk::ValidationReport rep;
    std::string parse_message;
    bool parsed = true;
    try {
        if (text.find('=') != std::string::npos)
            rep = tk::validate(tk::parse_equation(text), mode);
        else
            rep = tk::validate(tk::parse_expression(text), mode);
    } catch (const tk::ParseError& e) {
        parsed = false;
        parse_message = e.what();
        rep.ok = false;
    }

    if (output == "json") {
        json diags = json::array();
        if (!parsed)
            diags.push_back({{"rule", "parse"}, {"term", -1}, {"message", parse_message}});
        for (const tk::Diagnostic& d : rep.diagnostics)
            diags.push_back({{"rule", d.rule}, {"term", d.term}, {"message", d.message}});
        json free = json::array();
        json dummies = json::array();
        if (parsed) {
            for (const tk::IndexOccurrence& o : rep.free_indices)
                free.push_back(occurrence_json(o));
            for (const auto& term_pairs : rep.dummy_pairs) {
                json tp = json::array();
                for (const tk::DummyPair& dp : term_pairs)
                    tp.push_back({{"symbol", std::string(1, dp.symbol)},
                                  {"first", dp.first.position == tk::Variance::contra ? "^" : "_"},
                                  {"second",
                                   dp.second.position == tk::Variance::contra ? "^" : "_"}});
                dummies.push_back(tp);
            }
        }
        json out = {{"input", text},
                    {"mode", mode_name},
                    {"ok", rep.ok},
                    {"free_indices", free},
                    {"dummy_pairs", dummies},
                    {"diagnostics", diags}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "input: " << text << "\n";
        std::cout << "ok: " << (rep.ok ? "yes" : "no") << "\n";
        if (!parsed) std::cout << "parse error: " << parse_message << "\n";
        if (parsed) {
            std::cout << "free:";
            for (const tk::IndexOccurrence& o : rep.free_indices)
                std::cout << ' ' << (o.position == tk::Variance::contra ? '^' : '_') << o.symbol;
            std::cout << "\n";
            for (std::size_t t = 0; t < rep.dummy_pairs.size(); ++t) {
                std::cout << "term " << t << " dummies:";
                for (const tk::DummyPair& dp : rep.dummy_pairs[t]) std::cout << ' ' << dp.symbol;
                std::cout << "\n";
            }
        }
        for (const tk::Diagnostic& d : rep.diagnostics)
            std::cout << "violation [" << d.rule << "] " << d.message << "\n";
    }
    return rep.ok ? 0 : 1;
}

int cmd_eval(const std::string& expr, const std::vector<std::string>& binds, int dim,
             const std::string& mode_name, const std::string& output) {
    tk::Binding binding;
    for (const std::string& b : binds) {
        auto eq = b.find('=');
        if (eq == std::string::npos)
            throw tk::ShapeError("--bind expects name=file, got '" + b + "'");
        binding.emplace(b.substr(0, eq), tk::load_tensor(b.substr(eq + 1)));
    }
    tk::Mode mode = mode_name == "strict" ? tk::Mode::strict : tk::Mode::cartesian;
    tk::DenseTensor result = tk::einsum_eval(expr, binding, dim, mode);
    print_tensor(result, output);
    return 0;
}

int cmd_transform(const std::string& file, const std::string& jac_file,
                  const std::string& inv_file, const std::string& output) {
    tk::DenseTensor t = tk::load_tensor(file);
    tk::DenseTensor jac = tk::load_tensor(jac_file);
    tk::DenseTensor inv = inv_file.empty() ? tk::invert(jac) : tk::load_tensor(inv_file);
    print_tensor(tk::transform(t, jac, inv), output);
    return 0;
}

int cmd_det(const std::string& file, const std::string& method_name,
            const std::string& output) {
    tk::DetMethod method = tk::DetMethod::by_row;
    if (method_name == "by-col") method = tk::DetMethod::by_col;
    if (method_name == "double-epsilon") method = tk::DetMethod::double_epsilon;
    double d = tk::det_epsilon(tk::load_tensor(file), method);
    if (output == "json")
        std::cout << json{{"det", d}, {"method", method_name}}.dump(2) << "\n";
    else
        std::cout << "det = " << fmt(d) << "  (" << method_name << ")\n";
    return 0;
}

int cmd_inverse(const std::string& file, const std::string& output) {
    print_tensor(tk::inverse_epsilon(tk::load_tensor(file)), output);
    return 0;
}

int cmd_invariants(const std::string& file, const std::string& with_file,
                   const std::string& output) {
    tk::DenseTensor a = tk::load_tensor(file);
    tk::MainInvariants mi = tk::main_invariants(a);
    json out = {{"I", mi.I},   {"II", mi.II}, {"III", mi.III},
                {"I1", mi.I1}, {"I2", mi.I2}, {"I3", mi.I3}};
    if (!with_file.empty()) {
        tk::JointInvariants ji = tk::joint_invariants(a, tk::load_tensor(with_file));
        out["joint"] = {{"tr_a", ji.tr_a},     {"tr_b", ji.tr_b},     {"tr_a2", ji.tr_a2},
                        {"tr_b2", ji.tr_b2},   {"tr_a3", ji.tr_a3},   {"tr_b3", ji.tr_b3},
                        {"tr_ab", ji.tr_ab},   {"tr_a2b", ji.tr_a2b}, {"tr_ab2", ji.tr_ab2},
                        {"tr_a2b2", ji.tr_a2b2}};
    }
    if (output == "json") {
        std::cout << out.dump(2) << "\n";
    } else {
        for (auto& [k, v] : out.items()) {
            if (v.is_object()) {
                for (auto& [k2, v2] : v.items())
                    std::cout << std::setw(8) << k2 << " = " << fmt(v2.get<double>()) << "\n";
            } else {
                std::cout << std::setw(8) << k << " = " << fmt(v.get<double>()) << "\n";
            }
        }
    }
    return 0;
}

int cmd_christoffel(const std::string& system, const std::string& system_file,
                    const std::string& at, bool fd, const std::string& output) {
    tk::CoordinateSystem sys = resolve_system(system, system_file);
    if (fd) sys.metric_partials = nullptr;
    tk::Point p = parse_point(at, sys);
    tk::Christoffel gamma = tk::christoffel2(sys, p);

    json entries = json::array();
    int nonzero = 0;
    for (int k = 0; k < sys.dim; ++k)
        for (int i = 0; i < sys.dim; ++i)
            for (int j = 0; j < sys.dim; ++j) {
                double v = gamma(k, i, j);
                if (std::abs(v) <= 1e-10) continue;
                ++nonzero;
                // 1-based indices, as the symbols are usually written
                entries.push_back({{"k", k + 1}, {"i", i + 1}, {"j", j + 1}, {"value", v}});
            }
    json pt = json::object();
    for (int i = 0; i < sys.dim; ++i) pt[sys.coord_names[i]] = p[i];

    if (output == "json") {
        json out = {{"system", sys.name},
                    {"point", pt},
                    {"nonzero_count", nonzero},
                    {"entries", entries}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "system " << sys.name << ", " << nonzero << " nonzero symbols\n";
        for (const json& e : entries)
            std::cout << "Gamma^" << e["k"] << "_{" << e["i"] << " " << e["j"]
                      << "} = " << fmt(e["value"].get<double>()) << "\n";
    }
    return 0;
}

int cmd_covderiv(const std::string& system, const std::string& system_file,
                 const std::string& file, bool use_metric, const std::string& at,
                 const std::string& output) {
    tk::CoordinateSystem sys = resolve_system(system, system_file);
    tk::Point p = parse_point(at, sys);

    tk::TensorField field;
    if (use_metric) {
        field = tk::metric_field(sys);
    } else {
        // a tensor file acts as a field with constant components
        tk::DenseTensor t = tk::load_tensor(file);
        std::vector<tk::Variance> var(t.variance().begin(), t.variance().end());
        field = tk::tensor_field(t.dim(), var, [t](const tk::Point&) { return t; });
        std::vector<tk::Variance> pvar = var;
        pvar.push_back(tk::Variance::co);
        tk::DenseTensor zero(t.dim(), pvar, t.weight());
        field.partials = [zero](const tk::Point&) { return zero; };
    }
    print_tensor(tk::covariant_derivative(field, sys, p), output);
    return 0;
}

int cmd_verify_identities(int points, std::uint64_t seed, double tol, const std::string& id,
                          const std::string& style_name, int order,
                          const std::string& output) {
    tk::FieldStyle style =
        style_name == "poly-trig" ? tk::FieldStyle::poly_trig : tk::FieldStyle::poly;
    tk::FDScheme scheme;
    scheme.order = order;

    std::vector<tk::IdentityReport> reports;
    if (id.empty()) {
        for (const tk::IdentityCase& c : tk::identity_catalog())
            reports.push_back(tk::verify_identity(c, points, seed, tol, style, scheme));
    } else {
        reports.push_back(
            tk::verify_identity(tk::identity_by_id(id), points, seed, tol, style, scheme));
    }

    bool all_pass = true;
    if (output == "json") {
        json out = json::array();
        for (const tk::IdentityReport& r : reports) {
            all_pass = all_pass && r.pass;
            out.push_back({{"identity", r.id},
                           {"points", r.points},
                           {"seed", r.seed},
                           {"max_residual", r.max_residual},
                           {"tol", r.tol},
                           {"pass", r.pass}});
        }
        std::cout << out.dump(2) << "\n";
    } else {
        for (const tk::IdentityReport& r : reports) {
            all_pass = all_pass && r.pass;
            std::cout << std::left << std::setw(22) << r.id << std::right << std::setw(14)
                      << fmt(r.max_residual) << "  " << (r.pass ? "pass" : "FAIL") << "\n";
        }
    }
    return all_pass ? 0 : 1;
}

int cmd_verify_integral(std::uint64_t seed, int n, int fields, double tol,
                        const std::string& theorem, const std::string& output) {
    json out = json::array();
    bool all_pass = true;
    for (int f = 0; f < fields; ++f) {
        tk::Rng rng(seed + static_cast<std::uint64_t>(f));
        tk::VectorPoly poly = tk::VectorPoly::random(rng, tk::FieldStyle::poly);
        tk::VectorFn a = [poly](const tk::Point& q) { return poly.value(q); };

        auto push = [&](const char* name, const tk::IntegralReport& rep) {
            bool pass = rep.rel_error < tol;
            all_pass = all_pass && pass;
            out.push_back({{"theorem", name},
                           {"field", f},
                           {"n", n},
                           {"lhs", rep.lhs},
                           {"rhs", rep.rhs},
                           {"rel_error", rep.rel_error},
                           {"pass", pass}});
        };
        if (theorem == "divergence" || theorem == "both")
            push("divergence", tk::divergence_theorem_check(a, {0, 0, 0}, {1, 1, 1}, n));
        if (theorem == "stokes" || theorem == "both")
            push("stokes", tk::stokes_check(a, tk::Rect3{}, n));
    }

    if (output == "json") {
        std::cout << out.dump(2) << "\n";
    } else {
        for (const json& r : out)
            std::cout << std::left << std::setw(12) << r["theorem"].get<std::string>()
                      << " field " << r["field"] << "  rel_error "
                      << fmt(r["rel_error"].get<double>()) << "  "
                      << (r["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
    }
    return all_pass ? 0 : 1;
}

} // namespace

int run(int argc, char** argv) {
    CLI::App app{"tensor calculus workbench"};
    app.require_subcommand(1);

    std::string output = "json";
    auto add_output = [&output](CLI::App* sub) {
        sub->add_option("--output", output, "json or table")
            ->check(CLI::IsMember({"json", "table"}));
    };

    // validate
    std::string v_expr, v_mode = "strict";
    CLI::App* sub_validate = app.add_subcommand("validate", "check summation-convention rules");
    sub_validate->add_option("expression", v_expr, "index expression or equation")->required();
    sub_validate->add_option("--mode", v_mode, "strict or cartesian")
        ->check(CLI::IsMember({"strict", "cartesian"}));
    add_output(sub_validate);

    // eval
    std::string e_expr, e_mode = "cartesian";
    std::vector<std::string> e_binds;
    int e_dim = 3;
    CLI::App* sub_eval = app.add_subcommand("eval", "evaluate an index expression");
    sub_eval->add_option("expression", e_expr, "index expression")->required();
    sub_eval->add_option("--bind", e_binds, "name=tensor-file (repeatable)");
    sub_eval->add_option("--dim", e_dim, "working dimension")->check(CLI::Range(1, 8));
    sub_eval->add_option("--mode", e_mode, "strict or cartesian")
        ->check(CLI::IsMember({"strict", "cartesian"}));
    add_output(sub_eval);

    // transform
    std::string t_file, t_jac, t_inv;
    CLI::App* sub_transform =
        app.add_subcommand("transform", "apply a coordinate transformation");
    sub_transform->add_option("tensor", t_file, "tensor file")->required();
    sub_transform->add_option("--jacobian", t_jac, "jacobian tensor file")->required();
    sub_transform->add_option("--inverse-jacobian", t_inv,
                              "inverse jacobian file (computed when omitted)");
    add_output(sub_transform);

    // det
    std::string d_file, d_method = "by-row";
    CLI::App* sub_det = app.add_subcommand("det", "determinant via the permutation symbol");
    sub_det->add_option("tensor", d_file, "rank-2 tensor file")->required();
    sub_det->add_option("--method", d_method, "by-row, by-col or double-epsilon")
        ->check(CLI::IsMember({"by-row", "by-col", "double-epsilon"}));
    add_output(sub_det);

    // inverse
    std::string i_file;
    CLI::App* sub_inverse = app.add_subcommand("inverse", "3x3 inverse via epsilon formula");
    sub_inverse->add_option("tensor", i_file, "rank-2 tensor file")->required();
    add_output(sub_inverse);

    // invariants
    std::string n_file, n_with;
    CLI::App* sub_invariants =
        app.add_subcommand("invariants", "main (and joint) invariants of 3x3 tensors");
    sub_invariants->add_option("tensor", n_file, "rank-2 tensor file")->required();
    sub_invariants->add_option("--with", n_with, "second tensor for joint invariants");
    add_output(sub_invariants);

    // christoffel
    std::string c_system = "cartesian", c_system_file, c_at;
    bool c_fd = false;
    CLI::App* sub_christoffel =
        app.add_subcommand("christoffel", "Christoffel symbols of the second kind");
    sub_christoffel->add_option("system", c_system, "cartesian, cylindrical or spherical");
    sub_christoffel->add_option("--system-file", c_system_file, "coordinate system json");
    sub_christoffel->add_option("--at", c_at, "point, e.g. r=2,theta=1.0,phi=0")->required();
    sub_christoffel->add_flag("--fd", c_fd, "force finite-difference metric partials");
    add_output(sub_christoffel);

    // covderiv
    std::string cd_system = "cartesian", cd_system_file, cd_file, cd_at;
    bool cd_metric = false;
    CLI::App* sub_covderiv =
        app.add_subcommand("covderiv", "covariant derivative at a point");
    sub_covderiv->add_option("system", cd_system, "cartesian, cylindrical or spherical");
    sub_covderiv->add_option("--system-file", cd_system_file, "coordinate system json");
    sub_covderiv->add_option("--field", cd_file, "tensor file, taken as a constant field");
    sub_covderiv->add_flag("--metric", cd_metric, "differentiate the metric field instead");
    sub_covderiv->add_option("--at", cd_at, "point, e.g. r=2,theta=1.0,phi=0")->required();
    add_output(sub_covderiv);

    // verify-identities
    int vi_points = 100, vi_order = 4;
    std::uint64_t vi_seed = 42;
    double vi_tol = 1e-5;
    std::string vi_id, vi_style = "poly";
    CLI::App* sub_vident =
        app.add_subcommand("verify-identities", "run the vector identity harness");
    sub_vident->add_option("--points", vi_points, "sample points per identity")
        ->check(CLI::PositiveNumber);
    sub_vident->add_option("--seed", vi_seed, "random seed");
    sub_vident->add_option("--tol", vi_tol, "residual tolerance")->check(CLI::PositiveNumber);
    sub_vident->add_option("--id", vi_id, "run a single identity by id");
    sub_vident->add_option("--style", vi_style, "poly or poly-trig")
        ->check(CLI::IsMember({"poly", "poly-trig"}));
    sub_vident->add_option("--order", vi_order, "finite-difference order (2 or 4)")
        ->check(CLI::IsMember({2, 4}));
    add_output(sub_vident);

    // verify-integral
    int vg_n = 64, vg_fields = 3;
    std::uint64_t vg_seed = 42;
    double vg_tol = 1e-3;
    std::string vg_theorem = "both";
    CLI::App* sub_vint =
        app.add_subcommand("verify-integral", "divergence and Stokes theorem checks");
    sub_vint->add_option("--n", vg_n, "grid resolution")->check(CLI::PositiveNumber);
    sub_vint->add_option("--seed", vg_seed, "random seed");
    sub_vint->add_option("--fields", vg_fields, "number of seeded fields")
        ->check(CLI::PositiveNumber);
    sub_vint->add_option("--tol", vg_tol, "relative error tolerance")
        ->check(CLI::PositiveNumber);
    sub_vint->add_option("--theorem", vg_theorem, "divergence, stokes or both")
        ->check(CLI::IsMember({"divergence", "stokes", "both"}));
    add_output(sub_vint);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // --help exits 0, any usage problem exits 2
    }

    try {
        if (*sub_validate) return cmd_validate(v_expr, v_mode, output);
        if (*sub_eval) return cmd_eval(e_expr, e_binds, e_dim, e_mode, output);
        if (*sub_transform) return cmd_transform(t_file, t_jac, t_inv, output);
        if (*sub_det) return cmd_det(d_file, d_method, output);
        if (*sub_inverse) return cmd_inverse(i_file, output);
        if (*sub_invariants) return cmd_invariants(n_file, n_with, output);
        if (*sub_christoffel)
            return cmd_christoffel(c_system, c_system_file, c_at, c_fd, output);
        if (*sub_covderiv) {
            if (!cd_metric && cd_file.empty())
                throw tk::ShapeError("covderiv: need --field <file> or --metric");
            return cmd_covderiv(cd_system, cd_system_file, cd_file, cd_metric, cd_at, output);
        }
        if (*sub_vident)
            return cmd_verify_identities(vi_points, vi_seed, vi_tol, vi_id, vi_style, vi_order,
                                         output);
        if (*sub_vint)
            return cmd_verify_integral(vg_seed, vg_n, vg_fields, vg_tol, vg_theorem, output);
    } catch (const tk::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const tk::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

int main(int argc, char** argv) { return run(argc, argv); }
