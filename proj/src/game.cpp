#include "mpg/game.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace mpg {

using json = nlohmann::ordered_json;

void Game::validate() const {
    if (n < 1) throw InvariantViolation("game must have at least one state");
    if (static_cast<int>(states.size()) != n)
        throw InvariantViolation("state list length differs from n");
    for (int i = 0; i < n; ++i) {
        const auto& st = states[i];
        if (st.min_actions.empty())
            throw InvariantViolation("state " + std::to_string(i) + " has no Min action");
        for (size_t a = 0; a < st.min_actions.size(); ++a) {
            const auto& ma = st.min_actions[a];
            if (ma.max_actions.empty())
                throw InvariantViolation("state " + std::to_string(i) + ", Min action " +
                                         std::to_string(a) + " has no Max action");
            for (size_t b = 0; b < ma.max_actions.size(); ++b) {
                const auto& mc = ma.max_actions[b];
                if (mc.transition.size() != n)
                    throw InvariantViolation("transition row length differs from n");
                Rat sum(0);
                for (int j = 0; j < n; ++j) {
                    if (mc.transition(j).sign() < 0)
                        throw InvariantViolation("negative transition probability");
                    sum += mc.transition(j);
                }
                if (sum != Rat(1))
                    throw InvariantViolation("transition row of state " + std::to_string(i) +
                                             " sums to " + to_string(sum) + ", not 1");
            }
        }
    }
}

bool operator==(const Game& a, const Game& b) {
    if (a.n != b.n) return false;
    for (int i = 0; i < a.n; ++i) {
        if (a.min_count(i) != b.min_count(i)) return false;
        for (int p = 0; p < a.min_count(i); ++p) {
            if (a.max_count(i, p) != b.max_count(i, p)) return false;
            for (int q = 0; q < a.max_count(i, p); ++q) {
                const auto& x = a.at(i, p, q);
                const auto& y = b.at(i, p, q);
                if (x.payment != y.payment || !exact_eq(x.transition, y.transition)) return false;
            }
        }
    }
    return true;
}

void DetGame::validate() const {
    if (m < 1 || n < 1) throw InvariantViolation("deterministic game needs m, n >= 1");
    auto shape_ok = [&](const auto& mat) {
        if (static_cast<int>(mat.size()) != m) return false;
        for (const auto& row : mat)
            if (static_cast<int>(row.size()) != n) return false;
        return true;
    };
    if (!shape_ok(A) || !shape_ok(B)) throw InvariantViolation("A and B must be m x n");
    for (int j = 0; j < m; ++j) {
        bool any = false;
        for (int k = 0; k < n; ++k) any = any || B[j][k].has_value();
        if (!any) throw InvariantViolation("B row " + std::to_string(j) + " has no finite entry");
    }
    for (int i = 0; i < n; ++i) {
        bool any = false;
        for (int j = 0; j < m; ++j) any = any || A[j][i].has_value();
        if (!any) throw InvariantViolation("A column " + std::to_string(i) + " has no finite entry");
    }
}

bool operator==(const DetGame& a, const DetGame& b) {
    return a.m == b.m && a.n == b.n && a.A == b.A && a.B == b.B;
}

namespace {

json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("byte " + std::to_string(e.byte), e.what());
    }
}

Rat rat_field(const json& j, const std::string& path) {
    if (!j.is_string()) throw ParseError(path, "expected a rational string");
    return parse_rat(j.get<std::string>());
}

int int_field(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
    return j.get<int>();
}

}  // namespace

Game parse_game(const std::string& text) {
    const json doc = parse_document(text);
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("states"))
        throw ParseError("$", "expected an object with \"n\" and \"states\"");
    Game g;
    g.n = int_field(doc["n"], "$.n");
    if (!doc["states"].is_array()) throw ParseError("$.states", "expected an array");
    int i = 0;
    for (const auto& jstate : doc["states"]) {
        const std::string sp = "$.states[" + std::to_string(i) + "]";
        if (!jstate.is_object() || !jstate.contains("min_actions"))
            throw ParseError(sp, "expected an object with \"min_actions\"");
        GameState st;
        int a = 0;
        for (const auto& jmin : jstate["min_actions"]) {
            const std::string ap = sp + ".min_actions[" + std::to_string(a) + "]";
            if (!jmin.is_object() || !jmin.contains("max_actions"))
                throw ParseError(ap, "expected an object with \"max_actions\"");
            MinAction ma;
            int b = 0;
            for (const auto& jmax : jmin["max_actions"]) {
                const std::string bp = ap + ".max_actions[" + std::to_string(b) + "]";
                if (!jmax.is_object() || !jmax.contains("r") || !jmax.contains("p"))
                    throw ParseError(bp, "expected an object with \"r\" and \"p\"");
                MaxChoice mc;
                mc.payment = rat_field(jmax["r"], bp + ".r");
                if (!jmax["p"].is_array()) throw ParseError(bp + ".p", "expected an array");
                mc.transition.resize(jmax["p"].size());
                Eigen::Index k = 0;
                for (const auto& jp : jmax["p"]) {
                    mc.transition(k) = rat_field(jp, bp + ".p[" + std::to_string(k) + "]");
                    ++k;
                }
                ma.max_actions.push_back(std::move(mc));
                ++b;
            }
            st.min_actions.push_back(std::move(ma));
            ++a;
        }
        g.states.push_back(std::move(st));
        ++i;
    }
    g.validate();
    return g;
}

std::string serialize_game(const Game& g) {
    json doc;
    doc["n"] = g.n;
    doc["states"] = json::array();
    for (const auto& st : g.states) {
        json jstate;
        jstate["min_actions"] = json::array();
        for (const auto& ma : st.min_actions) {
            json jmin;
            jmin["max_actions"] = json::array();
            for (const auto& mc : ma.max_actions) {
                json jmax;
                jmax["r"] = to_string(mc.payment);
                json row = json::array();
                for (Eigen::Index j = 0; j < mc.transition.size(); ++j)
                    row.push_back(to_string(mc.transition(j)));
                jmax["p"] = std::move(row);
                jmin["max_actions"].push_back(std::move(jmax));
            }
            jstate["min_actions"].push_back(std::move(jmin));
        }
        doc["states"].push_back(std::move(jstate));
    }
    return doc.dump(2) + "\n";
}

DetGame parse_det_game(const std::string& text) {
    const json doc = parse_document(text);
    if (!doc.is_object() || !doc.contains("m") || !doc.contains("n") || !doc.contains("A") ||
        !doc.contains("B"))
        throw ParseError("$", "expected an object with \"m\", \"n\", \"A\", \"B\"");
    DetGame dg;
    dg.m = int_field(doc["m"], "$.m");
    dg.n = int_field(doc["n"], "$.n");
    auto parse_mat = [&](const json& jm, const std::string& name) {
        std::vector<std::vector<std::optional<BigInt>>> mat;
        if (!jm.is_array()) throw ParseError("$." + name, "expected an array of rows");
        int j = 0;
        for (const auto& jrow : jm) {
            const std::string rp = "$." + name + "[" + std::to_string(j) + "]";
            if (!jrow.is_array()) throw ParseError(rp, "expected an array");
            std::vector<std::optional<BigInt>> row;
            int k = 0;
            for (const auto& je : jrow) {
                if (je.is_null())
                    row.push_back(std::nullopt);
                else if (je.is_number_integer())
                    row.push_back(BigInt(je.get<long long>()));
                else
                    throw ParseError(rp + "[" + std::to_string(k) + "]", "expected int or null");
                ++k;
            }
            mat.push_back(std::move(row));
            ++j;
        }
        return mat;
    };
    dg.A = parse_mat(doc["A"], "A");
    dg.B = parse_mat(doc["B"], "B");
    dg.validate();
    return dg;
}

std::string serialize_det_game(const DetGame& dg) {
    json doc;
    doc["m"] = dg.m;
    doc["n"] = dg.n;
    auto dump_mat = [](const auto& mat) {
        json jm = json::array();
        for (const auto& row : mat) {
            json jrow = json::array();
            for (const auto& e : row) {
                if (e.has_value())
                    jrow.push_back(e->template convert_to<long long>());
                else
                    jrow.push_back(nullptr);
            }
            jm.push_back(std::move(jrow));
        }
        return jm;
    };
    doc["A"] = dump_mat(dg.A);
    doc["B"] = dump_mat(dg.B);
    return doc.dump(2) + "\n";
}

InputKind detect_input_kind(const std::string& text) {
    const json doc = parse_document(text);
    if (doc.is_object() && doc.contains("states")) return InputKind::Game;
    if (doc.is_object() && doc.contains("A") && doc.contains("B")) return InputKind::Det;
    throw ParseError("$", "unrecognized input schema");
}

Game encode_deterministic(const DetGame& dg) {
    dg.validate();
    Game g;
    g.n = dg.n;
    g.states.resize(dg.n);
    for (int i = 0; i < dg.n; ++i) {
        auto& st = g.states[i];
        for (int j = 0; j < dg.m; ++j) {
            if (!dg.A[j][i].has_value()) continue;
            MinAction ma;
            for (int k = 0; k < dg.n; ++k) {
                if (!dg.B[j][k].has_value()) continue;
                MaxChoice mc;
                mc.payment = Rat(*dg.B[j][k] - *dg.A[j][i]);
                mc.transition = zero_vector(dg.n);
                mc.transition(k) = Rat(1);
                ma.max_actions.push_back(std::move(mc));
            }
            st.min_actions.push_back(std::move(ma));
        }
    }
    g.validate();
    return g;
}

RatVector eval_det_operator(const DetGame& dg, const RatVector& x) {
    if (x.size() != dg.n) throw InvariantViolation("vector length differs from n");
    RatVector out(dg.n);
    for (int i = 0; i < dg.n; ++i) {
        bool have_outer = false;
        Rat best;
        for (int j = 0; j < dg.m; ++j) {
            if (!dg.A[j][i].has_value()) continue;
            bool have_inner = false;
            Rat inner;
            for (int k = 0; k < dg.n; ++k) {
                if (!dg.B[j][k].has_value()) continue;
                const Rat v = Rat(*dg.B[j][k]) + x(k);
                if (!have_inner || inner < v) {
                    inner = v;
                    have_inner = true;
                }
            }
            if (!have_inner) throw InvariantViolation("B row with no finite entry");
            const Rat v = -Rat(*dg.A[j][i]) + inner;
            if (!have_outer || v < best) {
                best = v;
                have_outer = true;
            }
        }
        if (!have_outer) throw InvariantViolation("A column with no finite entry");
        out(i) = best;
    }
    return out;
}

BigInt magnitude_bound(const Game& g) {
    BigInt d(2);
    auto feed = [&d](const Rat& r) {
        BigInt a = boost::multiprecision::abs(r.num());
        if (d < a) d = a;
        BigInt b = r.den();
        if (d < b) d = b;
    };
    for (int i = 0; i < g.n; ++i)
        for (int a = 0; a < g.min_count(i); ++a)
            for (int b = 0; b < g.max_count(i, a); ++b) {
                const auto& mc = g.at(i, a, b);
                feed(mc.payment);
                for (Eigen::Index j = 0; j < mc.transition.size(); ++j) feed(mc.transition(j));
            }
    return d;
}

namespace {

RatVector eps_powers(const Rat& eps, int n) {
    RatVector g(n);
    Rat acc(1);
    for (int i = 0; i < n; ++i) {
        acc *= eps;
        g(i) = acc;
    }
    return g;
}

}  // namespace

PerturbSpec perturbation_params(const Game& g) {
    const unsigned n = static_cast<unsigned>(g.n);
    const BigInt D = magnitude_bound(g);
    PerturbSpec spec;
    spec.D = D;
    spec.M = Rat(4 * ceil_isqrt_pow(n) * ipow(D, n * n + 1) + 1);
    spec.eps = Rat(BigInt(1), ipow(BigInt(n), n) * ipow(D, 2 * n * (n + 1)) + 1);
    spec.g = eps_powers(spec.eps, g.n);
    return spec;
}

PerturbSpec perturbation_params_det(const DetGame& dg) {
    BigInt D(2);
    auto feed = [&D](const std::optional<BigInt>& e) {
        if (!e.has_value()) return;
        BigInt a = boost::multiprecision::abs(*e);
        if (D < a) D = a;
    };
    for (const auto& row : dg.A)
        for (const auto& e : row) feed(e);
    for (const auto& row : dg.B)
        for (const auto& e : row) feed(e);
    const unsigned n = static_cast<unsigned>(dg.n);
    PerturbSpec spec;
    spec.D = D;
    spec.M = Rat(4 * BigInt(n) * D + 1);
    spec.eps = Rat(BigInt(1), ipow(BigInt(n), 3) + 1);
    spec.g = eps_powers(spec.eps, dg.n);
    return spec;
}

Game shift_payments(const Game& g, const RatVector& shift) {
    if (shift.size() != g.n) throw InvariantViolation("shift length differs from n");
    Game out = g;
    for (int i = 0; i < out.n; ++i)
        for (auto& ma : out.states[i].min_actions)
            for (auto& mc : ma.max_actions) mc.payment += shift(i);
    return out;
}

Game big_m_double(const Game& g, const Rat& M, const RatVector& gvec) {
    if (gvec.size() != g.n) throw InvariantViolation("perturbation length differs from n");
    Game out;
    out.n = 2 * g.n;
    out.states.resize(out.n);
    for (int i = 0; i < g.n; ++i) {
        GameState st;
        for (const auto& ma : g.states[i].min_actions) {
            MinAction nma;
            for (const auto& mc : ma.max_actions) {
                MaxChoice nmc;
                nmc.payment = mc.payment + gvec(i);
                nmc.transition = zero_vector(out.n);
                for (int j = 0; j < g.n; ++j) nmc.transition(g.n + j) = mc.transition(j);
                nma.max_actions.push_back(std::move(nmc));
            }
            st.min_actions.push_back(std::move(nma));
        }
        out.states[i] = std::move(st);
    }
    for (int i = 0; i < g.n; ++i) {
        MinAction only;
        for (int j = 0; j < g.n; ++j) {
            MaxChoice mc;
            mc.payment = (j == i) ? Rat(0) : -M;
            mc.transition = zero_vector(out.n);
            mc.transition(j) = Rat(1);
            only.max_actions.push_back(std::move(mc));
        }
        out.states[g.n + i].min_actions.push_back(std::move(only));
    }
    out.validate();
    return out;
}

Game big_m_double(const Game& g, const PerturbSpec& spec) {
    return big_m_double(g, spec.M, spec.g);
}

DetGame big_m_complete_det(const DetGame& dg, const Rat& M) {
    if (!M.is_integer() || M.sign() <= 0)
        throw InvariantViolation("penalty must be a positive integer");
    DetGame out = dg;
    for (auto& row : out.B)
        for (auto& e : row)
            if (!e.has_value()) e = -M.num();
    out.validate();
    return out;
}

}  // namespace mpg
