#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "frobstab/selfcheck.hpp"

namespace py = pybind11;

namespace {

py::object py_int_from_bigint(const frobstab::BigInt& x) {
    const std::string digits = x.str();
    PyObject* obj = PyLong_FromString(digits.c_str(), nullptr, 10);
    if (!obj) throw py::error_already_set();
    return py::reinterpret_steal<py::object>(obj);
}

frobstab::BigInt bigint_from_py_int(py::handle h) {
    const std::string digits = py::cast<std::string>(py::str(h));
    return frobstab::BigInt(digits);
}

py::object fraction_type() {
    return py::module_::import("fractions").attr("Fraction");
}

} // namespace

namespace pybind11::detail {

// Exact rationals cross the boundary as fractions.Fraction (ints accepted
// on the way in); floats are rejected, never rounded.
template <>
struct type_caster<frobstab::Rational> {
    PYBIND11_TYPE_CASTER(frobstab::Rational, const_name("fractions.Fraction"));

    bool load(handle src, bool) {
        if (PyFloat_Check(src.ptr()) || PyBool_Check(src.ptr())) return false;
        if (PyLong_Check(src.ptr())) {
            value = frobstab::Rational(bigint_from_py_int(src));
            return true;
        }
        if (py::isinstance(src, fraction_type())) {
            value = frobstab::Rational(bigint_from_py_int(src.attr("numerator")),
                                       bigint_from_py_int(src.attr("denominator")));
            return true;
        }
        return false;
    }

    static handle cast(const frobstab::Rational& r, return_value_policy, handle) {
        return fraction_type()(py_int_from_bigint(r.numerator()),
                               py_int_from_bigint(r.denominator()))
            .release();
    }
};

// Arbitrary-precision integers cross as python ints.
template <>
struct type_caster<frobstab::BigInt> {
    PYBIND11_TYPE_CASTER(frobstab::BigInt, const_name("int"));

    bool load(handle src, bool) {
        if (!PyLong_Check(src.ptr()) || PyBool_Check(src.ptr())) return false;
        value = bigint_from_py_int(src);
        return true;
    }

    static handle cast(const frobstab::BigInt& x, return_value_policy, handle) {
        return py_int_from_bigint(x).release();
    }
};

} // namespace pybind11::detail

namespace {

using frobstab::Rational;
using ProfileData = std::vector<std::pair<std::int64_t, Rational>>;

frobstab::SlopeProfile profile_from_data(const ProfileData& data) {
    std::vector<frobstab::ProfileBlock> blocks;
    blocks.reserve(data.size());
    for (const auto& [rank, slope] : data) blocks.push_back(frobstab::ProfileBlock{rank, slope});
    return frobstab::SlopeProfile(std::move(blocks));
}

ProfileData profile_to_data(const frobstab::SlopeProfile& profile) {
    ProfileData data;
    data.reserve(profile.blocks().size());
    for (const auto& b : profile.blocks()) data.emplace_back(b.rank, b.slope);
    return data;
}

frobstab::HNPolygon polygon_from_vertices(std::vector<std::pair<std::int64_t, Rational>> vertices) {
    return frobstab::make_polygon(std::move(vertices));
}

py::dict stats_dict(const frobstab::ProfileStats& stats) {
    py::dict out;
    out["mu"] = py::cast(stats.mu);
    out["mu_max"] = py::cast(stats.mu_max);
    out["mu_min"] = py::cast(stats.mu_min);
    out["instability"] = py::cast(stats.instability);
    return out;
}

py::dict forms_row_dict(const frobstab::FormsRow& row) {
    py::dict out;
    out["i"] = row.i;
    out["rank_b"] = py::cast(row.rank_b);
    out["rank_z"] = py::cast(row.rank_z);
    out["degb_coeff"] = py::cast(row.degb_coeff);
    out["degz_coeff"] = py::cast(row.degz_coeff);
    return out;
}

std::vector<frobstab::SheafStats> parts_from_data(
    const std::vector<std::tuple<std::int64_t, Rational, Rational>>& data) {
    std::vector<frobstab::SheafStats> parts;
    parts.reserve(data.size());
    for (const auto& [rank, slope, instability] : data) {
        frobstab::SheafStats s;
        s.rank = rank;
        s.slope = slope;
        s.instability = instability;
        parts.push_back(std::move(s));
    }
    return parts;
}

} // namespace

PYBIND11_MODULE(_frobstab, m) {
    m.doc() = "exact slope/instability calculator: truncated symmetric powers, "
              "Frobenius pushforwards, differential-form sheaves";

    py::register_exception<frobstab::HypothesisError>(m, "HypothesisError");
    py::register_exception<frobstab::InputError>(m, "InputError", PyExc_ValueError);

    py::class_<frobstab::VarietyContext>(m, "VarietyContext")
        .def(py::init([](int n, int p, const Rational& mu_omega,
                         const std::optional<Rational>& lmax_omega, const Rational& i_omega,
                         bool omega_semistable, bool omega_strongly_semistable) {
                 frobstab::VarietyContext ctx;
                 ctx.n = n;
                 ctx.p = p;
                 ctx.mu_omega = mu_omega;
                 ctx.lmax_omega = lmax_omega;
                 ctx.i_omega = i_omega;
                 ctx.omega_semistable = omega_semistable;
                 ctx.omega_strongly_semistable = omega_strongly_semistable;
                 ctx.validate();
                 return ctx;
             }),
             py::arg("n"), py::arg("p"), py::arg("mu_omega") = Rational(0),
             py::arg("lmax_omega") = std::nullopt, py::arg("i_omega") = Rational(0),
             py::arg("omega_semistable") = false, py::arg("omega_strongly_semistable") = false)
        .def_readonly("n", &frobstab::VarietyContext::n)
        .def_readonly("p", &frobstab::VarietyContext::p)
        .def_readonly("mu_omega", &frobstab::VarietyContext::mu_omega)
        .def_readonly("lmax_omega", &frobstab::VarietyContext::lmax_omega)
        .def_readonly("i_omega", &frobstab::VarietyContext::i_omega)
        .def_readonly("omega_semistable", &frobstab::VarietyContext::omega_semistable)
        .def_readonly("omega_strongly_semistable",
                      &frobstab::VarietyContext::omega_strongly_semistable);

    m.def("rank_tl", &frobstab::rank_tl, py::arg("r"), py::arg("p"), py::arg("l"));
    m.def("rank_tl_oracle", &frobstab::rank_tl_oracle, py::arg("r"), py::arg("p"), py::arg("l"));
    m.def("dvec", &frobstab::dvec, py::arg("r"), py::arg("p"), py::arg("l"));
    m.def("tl2_case_gap", &frobstab::tl2_case_gap, py::arg("r"), py::arg("p"), py::arg("l"));

    m.def(
        "tl_decomposition",
        [](const ProfileData& profile, int p, int l) {
            const auto dec = frobstab::tl_decomposition(profile_from_data(profile), p, l);
            py::dict out; // descending slope insertion order
            for (const auto& [slope, rank] : dec.pieces)
                out[py::cast(slope)] = py::cast(rank);
            return out;
        },
        py::arg("profile"), py::arg("p"), py::arg("l"));
    m.def(
        "tl_extremes",
        [](const ProfileData& profile, int p, int l) {
            return frobstab::tl_extremes(profile_from_data(profile), p, l);
        },
        py::arg("profile"), py::arg("p"), py::arg("l"));
    m.def(
        "instability_tl_exact",
        [](const ProfileData& profile, int p, int l) {
            return frobstab::instability_tl_exact(profile_from_data(profile), p, l);
        },
        py::arg("profile"), py::arg("p"), py::arg("l"));
    m.def(
        "bound_tl2",
        [](const ProfileData& profile, int p, int l) {
            return frobstab::bound_tl2(profile_from_data(profile), p, l);
        },
        py::arg("profile"), py::arg("p"), py::arg("l"));
    m.def("bound_instab_tl", &frobstab::bound_instab_tl, py::arg("r"), py::arg("p"), py::arg("l"),
          py::arg("i_e"), py::arg("lmax_omega"));

    m.def(
        "normalize",
        [](const ProfileData& profile) {
            return profile_to_data(frobstab::normalize(profile_from_data(profile)));
        },
        py::arg("profile"));
    m.def(
        "profile_stats",
        [](const ProfileData& profile) {
            return stats_dict(frobstab::profile_stats(profile_from_data(profile)));
        },
        py::arg("profile"));
    m.def(
        "polygon_of",
        [](const ProfileData& profile) {
            return frobstab::polygon_of(frobstab::normalize(profile_from_data(profile))).vertices;
        },
        py::arg("profile"));
    m.def(
        "dominates",
        [](const std::vector<std::pair<std::int64_t, Rational>>& p,
           const std::vector<std::pair<std::int64_t, Rational>>& q) {
            return frobstab::dominates(polygon_from_vertices(p), polygon_from_vertices(q));
        },
        py::arg("p"), py::arg("q"));
    m.def(
        "dominates_same_endpoints",
        [](const std::vector<std::pair<std::int64_t, Rational>>& p,
           const std::vector<std::pair<std::int64_t, Rational>>& q) {
            return frobstab::dominates_same_endpoints(polygon_from_vertices(p),
                                                      polygon_from_vertices(q));
        },
        py::arg("p"), py::arg("q"));

    m.def("mu_pushforward", &frobstab::mu_pushforward, py::arg("ctx"), py::arg("mu_e"),
          py::arg("m") = 1);
    m.def(
        "pushforward_stats",
        [](const frobstab::VarietyContext& ctx, std::int64_t rank, const Rational& mu) {
            frobstab::SheafStats stats;
            stats.rank = rank;
            stats.slope = mu;
            const auto out = frobstab::pushforward_stats(ctx, stats);
            py::dict d;
            d["rank"] = py::cast(out.rank);
            d["slope"] = py::cast(out.slope);
            d["degree"] = py::cast(out.degree);
            return d;
        },
        py::arg("ctx"), py::arg("rank"), py::arg("mu"));
    m.def(
        "canonical_filtration_ranks",
        [](const frobstab::VarietyContext& ctx, std::int64_t r_e) {
            std::vector<std::tuple<int, frobstab::BigInt, Rational>> out;
            for (const auto& layer : frobstab::canonical_filtration_ranks(ctx, r_e))
                out.emplace_back(layer.l, layer.rank, layer.slope_offset);
            return out;
        },
        py::arg("ctx"), py::arg("r_e"));
    m.def("deg_pushforward_forms", &frobstab::deg_pushforward_forms, py::arg("ctx"), py::arg("i"));

    m.def("bound_langer_gap", &frobstab::bound_langer_gap, py::arg("r"), py::arg("p"),
          py::arg("i_e"), py::arg("lmax_omega"));
    m.def(
        "bound_tensor",
        [](const std::vector<std::tuple<std::int64_t, Rational, Rational>>& parts, int p,
           const Rational& lmax) { return frobstab::bound_tensor(parts_from_data(parts), p, lmax); },
        py::arg("parts"), py::arg("p"), py::arg("lmax_omega"));
    m.def("bound_sun", &frobstab::bound_sun, py::arg("ctx"), py::arg("r_e"), py::arg("caps"),
          py::arg("force") = false);
    m.def("bound_pushforward_case_i", &frobstab::bound_pushforward_caseI, py::arg("ctx"),
          py::arg("r_e"), py::arg("force") = false);
    m.def(
        "bound_pushforward_case_ii",
        [](const frobstab::VarietyContext& ctx, std::int64_t rank, const Rational& mu,
           const Rational& instability, bool force) {
            frobstab::SheafStats stats;
            stats.rank = rank;
            stats.slope = mu;
            stats.instability = instability;
            const auto out = frobstab::bound_pushforward_caseII(ctx, stats, force);
            return py::make_tuple(out.per_l, out.total);
        },
        py::arg("ctx"), py::arg("rank"), py::arg("mu"), py::arg("instability"),
        py::arg("force") = false);

    m.def(
        "forms_recurrence",
        [](int n, int p) {
            py::list rows;
            for (const auto& row : frobstab::forms_recurrence(n, p).rows)
                rows.append(forms_row_dict(row));
            return rows;
        },
        py::arg("n"), py::arg("p"));
    m.def(
        "forms_closed",
        [](int n, int p, int i) { return forms_row_dict(frobstab::forms_closed(n, p, i)); },
        py::arg("n"), py::arg("p"), py::arg("i"));
    m.def(
        "check_zi_instability",
        [](int n, int p, int i) {
            const auto v = frobstab::check_zi_instability(n, p, i);
            py::dict out;
            out["n"] = v.n;
            out["p"] = v.p;
            out["i"] = v.i;
            out["mu_b_coeff"] = py::cast(v.mu_b_coeff);
            out["mu_omega_i_coeff"] = py::cast(v.mu_omega_i_coeff);
            out["exact_destabilizes"] = v.exact_destabilizes;
            out["paper_sufficient_lhs"] = py::cast(v.paper_sufficient_lhs);
            out["paper_sufficient_holds"] = v.paper_sufficient_holds;
            out["exact_sufficient_lhs"] = py::cast(v.exact_sufficient_lhs);
            out["exact_sufficient_holds"] = v.exact_sufficient_holds;
            out["sufficient_conflict"] = v.sufficient_conflict;
            out["in_claimed_range"] = v.in_claimed_range;
            return out;
        },
        py::arg("n"), py::arg("p"), py::arg("i"));
    m.def(
        "z1_hn", [](int n, int p) { return frobstab::z1_hn(n, p).vertices; }, py::arg("n"),
        py::arg("p"));
    m.def("z1_hn_assumptions", [] { return frobstab::z1_hn_assumptions(); });
    m.def("bound_bn_subsheaf", &frobstab::bound_bn_subsheaf, py::arg("n"), py::arg("p"),
          py::arg("r_b"), py::arg("mu_omega"), py::arg("force") = false);

    m.def(
        "stability_advisor",
        [](const frobstab::VarietyContext& ctx, bool e_strongly_semistable, bool e_semistable,
           bool mu_max_omega_nonpositive) {
            frobstab::EFlags flags;
            flags.strongly_semistable = e_strongly_semistable;
            flags.semistable = e_semistable;
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& a : frobstab::stability_advisor(ctx, flags, mu_max_omega_nonpositive))
                out.emplace_back(a.conclusion, std::string(frobstab::citation_tag(a.citation)));
            return out;
        },
        py::arg("ctx"), py::arg("e_strongly_semistable") = false, py::arg("e_semistable") = false,
        py::arg("mu_max_omega_nonpositive") = false);

    m.def(
        "selfcheck_json",
        [](const std::string& grid, std::uint64_t seed) {
            return frobstab::to_json(frobstab::selfcheck(grid, seed)).dump(2);
        },
        py::arg("grid") = "small", py::arg("seed") = 123456789ULL);
}
