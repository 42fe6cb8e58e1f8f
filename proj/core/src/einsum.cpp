#include "tensorkit/einsum.hpp"

#include <algorithm>

#include "tensorkit/special_tensors.hpp"

namespace tk {

namespace {

const DenseTensor& resolve(const std::string& name, int n_indices, const Binding& binding,
                           int dim, std::map<std::string, DenseTensor>& autos) {
    auto it = binding.find(name);
    if (it != binding.end()) return it->second;
    if (name == "e") {
        if (n_indices != dim)
            throw ShapeError("einsum: 'e' must carry exactly dim = " + std::to_string(dim) +
                             " indices");
        return autos.try_emplace("e", epsilon(dim)).first->second;
    }
    if (name == "d") {
        return autos.try_emplace("d", kronecker_covariant(dim)).first->second;
    }
    throw ShapeError("einsum: no binding for '" + name + "'");
}

} // namespace

DenseTensor einsum_eval(const Expression& expr, const Binding& binding, int dim, Mode mode) {
    if (dim < 1 || dim > DenseTensor::max_dim)
        throw ShapeError("einsum: dim must be in [1," + std::to_string(DenseTensor::max_dim) +
                         "]");
    ValidationReport rep = validate(expr, mode);
    if (!rep.ok)
        throw ShapeError("einsum: expression fails validation: " + rep.diagnostics[0].rule +
                         ": " + rep.diagnostics[0].message);

    // output shape from the first term's free indices
    std::vector<char> out_syms;
    std::vector<Variance> out_var;
    for (const auto& o : rep.free_indices) {
        out_syms.push_back(o.symbol);
        out_var.push_back(o.position);
    }

    std::map<std::string, DenseTensor> autos;
    DenseTensor out(dim, out_var);
    bool weight_known = false;

    for (std::size_t ti = 0; ti < expr.terms.size(); ++ti) {
        const Term& term = expr.terms[ti];

        std::vector<const DenseTensor*> bound;
        for (const auto& f : term.factors) {
            if (f.is_derivative)
                throw ShapeError("einsum: derivative factor 'pd' is not evaluable here");
            const DenseTensor& t = resolve(f.name, static_cast<int>(f.indices.size()), binding,
                                           dim, autos);
            if (t.dim() != dim && t.rank() != 0)
                throw ShapeError("einsum: '" + f.name + "' has dim " + std::to_string(t.dim()) +
                                 ", expected " + std::to_string(dim));
            if (t.rank() != static_cast<int>(f.indices.size()))
                throw ShapeError("einsum: '" + f.name + "' is rank " + std::to_string(t.rank()) +
                                 " but carries " + std::to_string(f.indices.size()) + " indices");
            bound.push_back(&t);
        }

        int term_weight = 0;
        for (const DenseTensor* t : bound) term_weight += t->weight();
        if (!weight_known) {
            out = DenseTensor(dim, out_var, term_weight);
            weight_known = true;
        } else if (term_weight != out.weight()) {
            throw ShapeError("einsum: terms disagree on weight");
        }

        // map every distinct symbol of this term to one loop variable;
        // free symbols first, in output-slot order
        std::vector<char> syms = out_syms;
        for (const auto& f : term.factors)
            for (const auto& [sym, pos] : f.indices)
                if (std::find(syms.begin(), syms.end(), sym) == syms.end()) syms.push_back(sym);
        int n_sym = static_cast<int>(syms.size());
        if (n_sym > DenseTensor::max_rank)
            throw ShapeError("einsum: term uses " + std::to_string(n_sym) +
                             " distinct indices; at most " +
                             std::to_string(DenseTensor::max_rank) + " supported");
        auto sym_id = [&](char c) {
            return static_cast<int>(std::find(syms.begin(), syms.end(), c) - syms.begin());
        };

        // factor slot -> loop variable
        std::vector<std::vector<int>> slot_map(term.factors.size());
        for (std::size_t fi = 0; fi < term.factors.size(); ++fi)
            for (const auto& [sym, pos] : term.factors[fi].indices)
                slot_map[fi].push_back(sym_id(sym));

        double coeff = static_cast<double>(term.coefficient.numerator()) /
                       static_cast<double>(term.coefficient.denominator());

        std::size_t n_free = out_syms.size();
        std::vector<int> assign(n_sym, 0);
        std::vector<int> fidx;
        while (true) {
            double prod = coeff;
            for (std::size_t fi = 0; fi < term.factors.size() && prod != 0.0; ++fi) {
                fidx.clear();
                for (int v : slot_map[fi]) fidx.push_back(assign[v]);
                prod *= bound[fi]->at(fidx);
            }
            if (prod != 0.0) {
                std::span<const int> free_part(assign.data(), n_free);
                out.components()[out.offset(free_part)] += prod;
            }
            // odometer over all loop variables, last fastest
            int v = n_sym - 1;
            for (; v >= 0; --v) {
                if (++assign[v] < dim) break;
                assign[v] = 0;
            }
            if (v < 0) break;
        }
    }
    // rank-0 results come back as plain scalars
    if (out.rank() == 0) return DenseTensor::scalar(out.components()[0], out.weight());
    return out;
}

DenseTensor einsum_eval(const std::string& expr, const Binding& binding, int dim, Mode mode) {
    return einsum_eval(parse_expression(expr), binding, dim, mode);
}

} // namespace tk
