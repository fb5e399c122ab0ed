#pragma once

// Deterministic JSON serialization of reports. Rationals are "a/b" strings,
// cyclotomic values are coefficient vectors tagged with their order, complex
// values are fixed-precision [re, im] decimal strings. Key order is fixed so
// reruns are byte-identical.

#include "analysis.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>

namespace igusa {

using ordered_json = nlohmann::ordered_json;

inline ordered_json json_of(const Rat& r) { return rat_str(r); }

inline ordered_json json_of(const Cyclo& c) {
    if (c.is_rational()) return rat_str(c.rational_value());
    ordered_json j;
    j["order"] = c.order();
    ordered_json v = ordered_json::array();
    for (auto& x : c.coeffs()) v.push_back(rat_str(x));
    j["coeffs"] = v;
    return j;
}

inline ordered_json json_of(const LaurentPoly& p) {
    ordered_json arr = ordered_json::array();
    for (auto& [k, v] : p.coeffs()) arr.push_back(ordered_json::array({k, json_of(v)}));
    return arr;
}

inline ordered_json json_of_den(const DenMultiset& den) {
    ordered_json arr = ordered_json::array();
    for (auto& [f, m] : den) arr.push_back(ordered_json::array({f.N, f.M, m}));
    return arr;
}

inline ordered_json json_of(const FactoredRatFun& f) {
    ordered_json terms = ordered_json::array();
    for (auto& t : f.terms()) {
        ordered_json jt;
        jt["num"] = json_of(t.num);
        jt["den"] = json_of_den(t.den);
        terms.push_back(jt);
    }
    ordered_json j;
    j["q"] = f.q();
    j["terms"] = terms;
    return j;
}

inline ordered_json json_of(const FactoredRatFun::Normalized& n) {
    ordered_json j;
    j["num"] = json_of(n.num);
    j["den"] = json_of_den(n.den);
    return j;
}

inline ordered_json json_of(const NewtonPolyhedron& np) {
    ordered_json j;
    j["n"] = np.n;
    ordered_json sup = ordered_json::array();
    for (auto& s : np.support) sup.push_back(s);
    j["support"] = sup;
    ordered_json vert = ordered_json::array();
    for (auto& v : np.vertices) vert.push_back(v);
    j["vertices"] = vert;
    ordered_json fac = ordered_json::array();
    for (auto& f : np.facets) {
        ordered_json jf;
        jf["normal"] = f.normal;
        jf["m"] = f.m;
        jf["abs"] = f.abs;
        fac.push_back(jf);
    }
    j["facets"] = fac;
    ordered_json faces = ordered_json::array();
    for (auto& f : np.faces) {
        ordered_json jf;
        jf["dim"] = f.dim;
        jf["points"] = f.points;
        jf["recession"] = f.recession;
        jf["facets"] = f.containing_facets;
        ordered_json gens = ordered_json::array();
        for (int i : f.containing_facets) gens.push_back(np.facets[static_cast<std::size_t>(i)].normal);
        jf["cone_generators"] = gens;
        faces.push_back(jf);
    }
    j["faces"] = faces;
    return j;
}

inline std::string fixed_decimal(double v, int digits = 15) {
    std::ostringstream os;
    os << std::setprecision(digits) << std::fixed << v;
    return os.str();
}

inline ordered_json json_of(const std::complex<double>& z) {
    return ordered_json::array({fixed_decimal(z.real()), fixed_decimal(z.imag())});
}

inline ordered_json json_of(const ZetaReport& rep) {
    ordered_json j;
    j["mode"] = mode_name(rep.mode_used);
    ordered_json gate = ordered_json::array();
    for (auto& v : rep.gate.verdicts) {
        ordered_json g;
        g["face"] = v.face_index; // -1 is Gamma(f) itself
        g["nondegenerate"] = v.nondegenerate;
        g["singular_points"] = v.singular_count;
        gate.push_back(g);
    }
    j["gate"] = gate;
    j["torus_term"] = json_of(rep.torus_term);
    ordered_json cones = ordered_json::array();
    for (auto& c : rep.cones) {
        ordered_json jc;
        jc["face"] = c.face_index;
        ordered_json gens = ordered_json::array();
        for (auto& g : c.piece.generators) gens.push_back(g);
        jc["generators"] = gens;
        ordered_json H = ordered_json::array();
        for (auto& h : c.H) H.push_back(h);
        jc["H"] = H;
        if (c.torus_factor) jc["torus_factor"] = json_of(*c.torus_factor);
        if (c.series_factor) jc["series_factor"] = json_of(*c.series_factor);
        jc["total"] = json_of(c.total);
        cones.push_back(jc);
    }
    j["cones"] = cones;
    j["factored"] = json_of(rep.total);
    j["normalized"] = json_of(rep.normalized);
    return j;
}

inline ordered_json json_of(const std::vector<PoleFamily>& poles) {
    ordered_json arr = ordered_json::array();
    for (auto& p : poles) {
        ordered_json jp;
        jp["N"] = p.N;
        jp["M"] = p.M;
        jp["real_part"] = rat_str(p.real_part());
        jp["multiplicity"] = p.multiplicity;
        arr.push_back(jp);
    }
    return arr;
}

inline ordered_json json_of(const BetaInvariants& inv, const NewtonPolyhedron& np) {
    ordered_json j;
    j["beta"] = rat_str(inv.beta);
    ordered_json t0 = ordered_json::array();
    for (auto& c : inv.T0) t0.push_back(rat_str(c));
    j["T0"] = t0;
    j["tau0_face"] = inv.tau0_face;
    j["tau0_points"] = np.faces[inv.tau0_face].points;
    j["rho"] = inv.rho;
    return j;
}

inline ordered_json json_of(const TheoremBVerdict& v) {
    ordered_json j;
    switch (v.situation) {
        case TheoremBVerdict::Case::AboveMinusOne: j["case"] = "beta > -1"; break;
        case TheoremBVerdict::Case::AtMinusOne: j["case"] = "beta = -1"; break;
        case TheoremBVerdict::Case::OutOfScope: j["case"] = "beta < -1 (out of scope)"; break;
    }
    j["beta"] = rat_str(v.beta);
    j["rho"] = v.rho;
    j["observed_multiplicity"] = v.observed_multiplicity;
    ordered_json counts = ordered_json::array();
    for (auto& fc : v.face_counts)
        counts.push_back(ordered_json::array({fc.face_index, fc.count}));
    j["face_counts"] = counts;
    j["pass"] = v.pass;
    j["detail"] = v.detail;
    return j;
}

} // namespace igusa
