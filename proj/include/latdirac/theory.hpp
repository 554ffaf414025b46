#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "latdirac/errors.hpp"
#include "latdirac/lattice.hpp"
#include "latdirac/rational.hpp"
#include "latdirac/sparse.hpp"

namespace latdirac {

/// One index slot of a field: a plain range or an antisymmetric pair range
/// (stored once with i < j).
struct IndexSlot {
    std::string name;
    int lo = 0, hi = 0;
    bool pair = false;

    bool operator==(const IndexSlot&) const = default;
};

struct FieldDescriptor {
    std::string name;
    std::vector<IndexSlot> slots;

    bool operator==(const FieldDescriptor&) const = default;

    int component_count() const {
        int n = 1;
        for (const auto& s : slots) {
            int e = s.hi - s.lo + 1;
            n *= s.pair ? e * (e - 1) / 2 : e;
        }
        return n;
    }

    /// Component labels in enumeration order: leftmost slot slowest, pair
    /// slots running over ordered pairs (i,j), i < j, lexicographically.
    std::vector<std::string> component_labels() const {
        std::vector<std::string> out{name};
        for (const auto& s : slots) {
            std::vector<std::string> suffixes;
            if (!s.pair) {
                for (int i = s.lo; i <= s.hi; ++i) suffixes.push_back(std::to_string(i));
            } else {
                for (int i = s.lo; i <= s.hi; ++i)
                    for (int j = i + 1; j <= s.hi; ++j)
                        suffixes.push_back(std::to_string(i) + "," + std::to_string(j));
            }
            std::vector<std::string> next;
            for (const auto& base : out)
                for (const auto& suf : suffixes) next.push_back(base + "[" + suf + "]");
            out = std::move(next);
        }
        return out;
    }
};

/// Kinetic row: coeff * q_m * dq_n/dt, both at the same site. A row whose
/// first slot is itself marked as a velocity makes the Lagrangian quadratic
/// in velocities and is rejected by the analysis.
struct KineticRow {
    Rational coeff;
    int m_comp = -1;
    int n_comp = -1;
    bool m_is_velocity = false;

    bool operator==(const KineticRow&) const = default;
};

/// Velocity-free Hamiltonian row in document form:
///   coeff * q1(x) * (stencil q2)(x),  stencil in {id, D1, D2, D3}
/// (forward differences along the spatial axes).
struct HamRow {
    Rational coeff;
    int comp1 = -1;
    int stencil = 0; // 0 = id, 1..3 = forward difference along that axis
    int comp2 = -1;

    bool operator==(const HamRow&) const = default;
};

/// Fully general translation-invariant quadratic term,
///   coeff * q1(x + off1) * q2(x + off2),
/// used by built-in theories whose Hamiltonian is not expressible with a
/// single difference per row (products of two differenced factors).
struct GeneralHamTerm {
    Rational coeff;
    int comp1 = -1;
    std::array<int, 3> off1{0, 0, 0};
    int comp2 = -1;
    std::array<int, 3> off2{0, 0, 0};

    bool operator==(const GeneralHamTerm&) const = default;
};

/// Declarative first-order field theory on the spatial lattice: Lagrangian
/// linear in time derivatives, Hamiltonian built from the rows below.
struct TheorySpec {
    std::string name;
    std::vector<FieldDescriptor> fields;
    std::vector<KineticRow> kinetic;
    std::vector<HamRow> hamiltonian;
    std::vector<GeneralHamTerm> hamiltonian_general;
    std::vector<int> multiplier_components;

    bool operator==(const TheorySpec&) const = default;

    int config_dim() const {
        int n = 0;
        for (const auto& f : fields) n += f.component_count();
        return n;
    }

    std::vector<std::string> component_labels() const {
        std::vector<std::string> out;
        for (const auto& f : fields) {
            auto l = f.component_labels();
            out.insert(out.end(), l.begin(), l.end());
        }
        return out;
    }

    int component_index(const std::string& label) const {
        auto labels = component_labels();
        for (size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return static_cast<int>(i);
        throw ValidationError("unknown component '" + label + "'");
    }

    /// Hessian of the Lagrangian in the velocities, per site. Zero for any
    /// well-formed first-order table; velocity-velocity rows show up here.
    SparseMatrix velocity_hessian() const {
        const int n = config_dim();
        SparseMatrix h(n, n);
        for (const auto& r : kinetic) {
            if (!r.m_is_velocity) continue;
            h.add(r.m_comp, r.n_comp, r.coeff);
            h.add(r.n_comp, r.m_comp, r.coeff);
        }
        return h;
    }

    void validate() const {
        const int n = config_dim();
        std::set<std::string> names;
        for (const auto& f : fields) {
            if (!names.insert(f.name).second)
                throw ValidationError("duplicate field name '" + f.name + "'");
            for (const auto& s : f.slots) {
                if (s.hi < s.lo)
                    throw ValidationError("empty index range in field '" + f.name + "'");
                if (s.pair && s.hi <= s.lo)
                    throw ValidationError("pair index of field '" + f.name +
                                          "' needs at least two values");
            }
        }
        auto in_range = [&](int c) { return c >= 0 && c < n; };
        for (const auto& r : kinetic)
            if (!in_range(r.m_comp) || !in_range(r.n_comp))
                throw ValidationError("kinetic row references an undeclared component");
        for (const auto& r : hamiltonian) {
            if (!in_range(r.comp1) || !in_range(r.comp2))
                throw ValidationError("hamiltonian row references an undeclared component");
            if (r.stencil < 0 || r.stencil > 3) throw ValidationError("bad stencil");
        }
        for (const auto& t : hamiltonian_general)
            if (!in_range(t.comp1) || !in_range(t.comp2))
                throw ValidationError("hamiltonian term references an undeclared component");
        std::set<int> mult;
        for (int m : multiplier_components) {
            if (!in_range(m)) throw ValidationError("multiplier flag on undeclared component");
            if (!mult.insert(m).second) throw ValidationError("duplicate multiplier flag");
        }
    }
};

// ---------------------------------------------------------------------------
// Built-in theories
// ---------------------------------------------------------------------------

namespace theories {

/// First-order tetrad/two-form theory of the decoupled (G -> 0) gravity
/// action: configuration e^I_mu (16) and B^I_{alpha beta} (24) per site,
/// kinetic term eta^{abc} B_{Iab} de^I_c/dt, and the velocity-free rows
///   -1/2 eta^{abc} B_{I0a} (D_b e^I_c - D_c e^I_b) + eta^{abc} B_{Iab} D_c e^I_0
/// with internal indices lowered through the (-,+,+,+) sign table.
inline TheorySpec paper_g0() {
    TheorySpec s;
    s.name = "paper_g0";
    s.fields = {
        FieldDescriptor{"e", {IndexSlot{"I", 0, 3, false}, IndexSlot{"mu", 0, 3, false}}},
        FieldDescriptor{"B", {IndexSlot{"I", 0, 3, false}, IndexSlot{"ab", 0, 3, true}}},
    };
    auto pair6 = [](int a, int b) { // (0,1)(0,2)(0,3)(1,2)(1,3)(2,3)
        static const int idx[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
        return idx[a][b];
    };
    auto e_comp = [](int i, int mu) { return i * 4 + mu; };
    auto b_comp = [&](int i, int a, int b) { return 16 + i * 6 + pair6(a, b); };

    // kinetic: eta^{abc} eta_II B^I_{(ab)} * d/dt e^I_c over the full (a,b) range
    for (int i = 0; i < 4; ++i)
        for (int a = 1; a <= 3; ++a)
            for (int b = 1; b <= 3; ++b)
                for (int c = 1; c <= 3; ++c) {
                    int eps = levi_civita3(a, b, c);
                    if (eps == 0) continue;
                    int store_sign = a < b ? 1 : -1;
                    Rational coeff = rat(eps * store_sign * eta_lorentz(i, i));
                    s.kinetic.push_back(
                        KineticRow{coeff, b_comp(i, std::min(a, b), std::max(a, b)),
                                   e_comp(i, c), false});
                }

    // -1/2 eta^{abc} eta_II B^I_{(0a)} (D_b e^I_c - D_c e^I_b)
    for (int i = 0; i < 4; ++i)
        for (int a = 1; a <= 3; ++a)
            for (int b = 1; b <= 3; ++b)
                for (int c = 1; c <= 3; ++c) {
                    int eps = levi_civita3(a, b, c);
                    if (eps == 0) continue;
                    Rational half_eps = rat(-eps * eta_lorentz(i, i), 2);
                    s.hamiltonian.push_back(HamRow{half_eps, b_comp(i, 0, a), b, e_comp(i, c)});
                    s.hamiltonian.push_back(HamRow{-half_eps, b_comp(i, 0, a), c, e_comp(i, b)});
                }

    // + eta^{abc} eta_II B^I_{(ab)} D_c e^I_0
    for (int i = 0; i < 4; ++i)
        for (int a = 1; a <= 3; ++a)
            for (int b = 1; b <= 3; ++b)
                for (int c = 1; c <= 3; ++c) {
                    int eps = levi_civita3(a, b, c);
                    if (eps == 0) continue;
                    int store_sign = a < b ? 1 : -1;
                    Rational coeff = rat(eps * store_sign * eta_lorentz(i, i));
                    s.hamiltonian.push_back(
                        HamRow{coeff, b_comp(i, std::min(a, b), std::max(a, b)), c,
                               e_comp(i, 0)});
                }

    for (int i = 0; i < 4; ++i) s.multiplier_components.push_back(e_comp(i, 0));
    for (int i = 0; i < 4; ++i)
        for (int a = 1; a <= 3; ++a) s.multiplier_components.push_back(b_comp(i, 0, a));
    s.validate();
    return s;
}

/// First-order electromagnetism: configuration (A_mu, E^a), kinetic term
/// E^a dA_a/dt, Hamiltonian 1/2 (E^2 + (curl A)^2) - A_0 Dbar_a E^a. The
/// A_0 coupling is held as E^a D_a A_0 (the same functional under the
/// lattice sum); the magnetic term needs general offset pairs.
inline TheorySpec maxwell1() {
    TheorySpec s;
    s.name = "maxwell1";
    s.fields = {
        FieldDescriptor{"A", {IndexSlot{"mu", 0, 3, false}}},
        FieldDescriptor{"E", {IndexSlot{"a", 1, 3, false}}},
    };
    auto a_comp = [](int mu) { return mu; };
    auto e_comp = [](int a) { return 4 + (a - 1); };

    for (int a = 1; a <= 3; ++a)
        s.kinetic.push_back(KineticRow{rat(1), e_comp(a), a_comp(a), false});

    for (int a = 1; a <= 3; ++a) {
        s.hamiltonian.push_back(HamRow{rat(1, 2), e_comp(a), 0, e_comp(a)});
        s.hamiltonian.push_back(HamRow{rat(1), e_comp(a), a, a_comp(0)});
    }

    // 1/2 (curl A)^2 = 1/2 eta^{eab} eta^{ecd} (D_a A_b)(D_c A_d)
    for (int e = 1; e <= 3; ++e)
        for (int a = 1; a <= 3; ++a)
            for (int b = 1; b <= 3; ++b)
                for (int c = 1; c <= 3; ++c)
                    for (int d = 1; d <= 3; ++d) {
                        int eps = levi_civita3(e, a, b) * levi_civita3(e, c, d);
                        if (eps == 0) continue;
                        Rational h = rat(eps, 2);
                        std::array<int, 3> oa{0, 0, 0}, oc{0, 0, 0}, zero{0, 0, 0};
                        oa[a - 1] = 1;
                        oc[c - 1] = 1;
                        s.hamiltonian_general.push_back(
                            GeneralHamTerm{h, a_comp(b), oa, a_comp(d), oc});
                        s.hamiltonian_general.push_back(
                            GeneralHamTerm{-h, a_comp(b), oa, a_comp(d), zero});
                        s.hamiltonian_general.push_back(
                            GeneralHamTerm{-h, a_comp(b), zero, a_comp(d), oc});
                        s.hamiltonian_general.push_back(
                            GeneralHamTerm{h, a_comp(b), zero, a_comp(d), zero});
                    }

    s.multiplier_components.push_back(a_comp(0));
    s.validate();
    return s;
}

} // namespace theories

// ---------------------------------------------------------------------------
// Document format (see docs/theory_format.md)
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
        if (tok[0] == '#') break;
        out.push_back(tok);
    }
    return out;
}

} // namespace detail

/// Parse a theory document. Line-oriented:
///   theory <name>
///   field <name> (idx <iname>=<lo>..<hi> | pair <iname>=<lo>..<hi>)+
///   kinetic <c> <label> <label>        (first label may be dot(<label>))
///   ham <c> <label> <stencil> <label>  (stencil: id | D1 | D2 | D3)
///   mult <label>
/// Component labels look like e[2][0] or B[1][0,3]; pair indices are always
/// written ordered. '#' starts a comment.
inline TheorySpec parse_theory(const std::string& text) {
    TheorySpec s;
    bool have_theory = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    // two passes: fields first so labels resolve regardless of row order
    std::vector<std::pair<int, std::vector<std::string>>> rows;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = detail::tokenize(line);
        if (toks.empty()) continue;
        rows.emplace_back(lineno, std::move(toks));
    }
    if (rows.empty()) throw ParseError(0, "empty document");

    for (const auto& [ln, toks] : rows) {
        if (toks[0] == "theory") {
            if (have_theory) throw ParseError(ln, "duplicate theory declaration");
            if (toks.size() != 2) throw ParseError(ln, "expected: theory <name>");
            s.name = toks[1];
            have_theory = true;
        } else if (toks[0] == "field") {
            if (toks.size() < 3) throw ParseError(ln, "expected: field <name> <slots...>");
            FieldDescriptor f;
            f.name = toks[1];
            for (size_t i = 2; i < toks.size(); i += 2) {
                if (i + 1 >= toks.size()) throw ParseError(ln, "dangling slot keyword");
                const std::string& kind = toks[i];
                const std::string& spec = toks[i + 1];
                if (kind != "idx" && kind != "pair")
                    throw ParseError(ln, "expected idx or pair, got '" + kind + "'");
                auto eq = spec.find('=');
                auto dots = spec.find("..");
                if (eq == std::string::npos || dots == std::string::npos || dots < eq)
                    throw ParseError(ln, "slot must look like name=lo..hi");
                IndexSlot slot;
                slot.name = spec.substr(0, eq);
                try {
                    slot.lo = std::stoi(spec.substr(eq + 1, dots - eq - 1));
                    slot.hi = std::stoi(spec.substr(dots + 2));
                } catch (const std::exception&) {
                    throw ParseError(ln, "bad slot bounds in '" + spec + "'");
                }
                slot.pair = kind == "pair";
                f.slots.push_back(slot);
            }
            s.fields.push_back(std::move(f));
        }
    }
    if (!have_theory) throw ParseError(0, "missing theory declaration");

    std::map<std::string, int> comp;
    {
        auto labels = s.component_labels();
        for (size_t i = 0; i < labels.size(); ++i) comp[labels[i]] = static_cast<int>(i);
    }
    auto resolve = [&](const std::string& label, int ln) {
        auto it = comp.find(label);
        if (it == comp.end())
            throw ValidationError("line " + std::to_string(ln) +
                                  ": reference to undeclared component '" + label + "'");
        return it->second;
    };

    for (const auto& [ln, toks] : rows) {
        if (toks[0] == "kinetic") {
            if (toks.size() != 4) throw ParseError(ln, "expected: kinetic <c> <label> <label>");
            KineticRow r;
            r.coeff = Rational::from_string(toks[1]);
            std::string m = toks[2];
            if (m.rfind("dot(", 0) == 0 && m.back() == ')') {
                r.m_is_velocity = true;
                m = m.substr(4, m.size() - 5);
            }
            r.m_comp = resolve(m, ln);
            r.n_comp = resolve(toks[3], ln);
            s.kinetic.push_back(r);
        } else if (toks[0] == "ham") {
            if (toks.size() != 5)
                throw ParseError(ln, "expected: ham <c> <label> <stencil> <label>");
            HamRow r;
            r.coeff = Rational::from_string(toks[1]);
            r.comp1 = resolve(toks[2], ln);
            const std::string& st = toks[3];
            if (st == "id") r.stencil = 0;
            else if (st == "D1") r.stencil = 1;
            else if (st == "D2") r.stencil = 2;
            else if (st == "D3") r.stencil = 3;
            else throw ParseError(ln, "stencil must be id, D1, D2 or D3");
            r.comp2 = resolve(toks[4], ln);
            s.hamiltonian.push_back(r);
        } else if (toks[0] == "mult") {
            if (toks.size() != 2) throw ParseError(ln, "expected: mult <label>");
            s.multiplier_components.push_back(resolve(toks[1], ln));
        } else if (toks[0] != "theory" && toks[0] != "field") {
            throw ParseError(ln, "unknown directive '" + toks[0] + "'");
        }
    }

    s.validate();
    return s;
}

/// Serialize back to the document grammar. Throws ValidationError for specs
/// carrying general offset terms, which the grammar cannot express.
inline std::string emit_theory(const TheorySpec& s) {
    if (!s.hamiltonian_general.empty())
        throw ValidationError("theory '" + s.name +
                              "' uses general offset terms not representable in the "
                              "document grammar");
    std::ostringstream out;
    out << "theory " << s.name << "\n\n";
    for (const auto& f : s.fields) {
        out << "field " << f.name;
        for (const auto& sl : f.slots)
            out << (sl.pair ? " pair " : " idx ") << sl.name << "=" << sl.lo << ".." << sl.hi;
        out << "\n";
    }
    auto labels = s.component_labels();
    out << "\n";
    for (const auto& r : s.kinetic) {
        out << "kinetic " << r.coeff.to_string() << " ";
        if (r.m_is_velocity) out << "dot(" << labels[r.m_comp] << ")";
        else out << labels[r.m_comp];
        out << " " << labels[r.n_comp] << "\n";
    }
    out << "\n";
    static const char* stencils[] = {"id", "D1", "D2", "D3"};
    for (const auto& r : s.hamiltonian)
        out << "ham " << r.coeff.to_string() << " " << labels[r.comp1] << " "
            << stencils[r.stencil] << " " << labels[r.comp2] << "\n";
    out << "\n";
    for (int m : s.multiplier_components) out << "mult " << labels[m] << "\n";
    return out.str();
}

/// Resolve a theory by built-in name or by loading a document from a path.
inline TheorySpec load_theory_text(const std::string& text) { return parse_theory(text); }

} // namespace latdirac
