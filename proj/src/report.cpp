#include "mpg/report.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace mpg {

using json = nlohmann::ordered_json;

namespace {

json rat_array(const RatVector& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(to_string(v(i)));
    return arr;
}

json policy_json(const MinPolicy& sigma) {
    json arr = json::array();
    for (int c : sigma.choice) arr.push_back(c);
    return arr;
}

json policy_json(const MaxPolicy& tau) {
    json arr = json::array();
    for (const auto& row : tau.choice) arr.push_back(row);
    return arr;
}

json eigenpair_json(const Eigenpair& p) {
    json j;
    j["lambda"] = to_string(p.lambda);
    j["u"] = rat_array(p.u);
    return j;
}

std::string policy_text(const MinPolicy& sigma) {
    std::string s;
    for (size_t i = 0; i < sigma.choice.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(sigma.choice[i]);
    }
    return s;
}

}  // namespace

std::string solve_report_json(const SolveReport& rep) {
    json doc;
    doc["schema"] = 1;
    doc["kind"] = "solve";
    doc["method"] = rep.method;
    doc["chibar"] = to_string(rep.chibar);
    doc["chibar_lossy_float"] = rep.chibar.to_double_lossy();
    doc["sigma_star"] = policy_json(rep.sigma_star);
    doc["tau_star"] = policy_json(rep.tau_star);
    doc["eigenpair"] = eigenpair_json(rep.perturbed_eigenpair);
    if (rep.spec.has_value()) {
        json spec;
        spec["M"] = to_string(rep.spec->M);
        spec["eps"] = to_string(rep.spec->eps);
        spec["g"] = rat_array(rep.spec->g);
        spec["D"] = rep.spec->D.str();
        doc["perturbation"] = std::move(spec);
    } else {
        doc["perturbation"] = nullptr;
    }
    doc["iterations"] = rep.trace.size();
    json trace = json::array();
    for (const auto& entry : rep.trace) {
        json e;
        e["k"] = entry.k;
        e["lambda"] = to_string(entry.lambda);
        e["sigma"] = policy_json(entry.sigma);
        trace.push_back(std::move(e));
    }
    doc["trace"] = std::move(trace);
    return doc.dump(2) + "\n";
}

std::string solve_report_text(const SolveReport& rep) {
    std::ostringstream os;
    os << "chibar = " << to_string(rep.chibar) << " (~" << rep.chibar.to_double_lossy()
       << ", lossy)\n";
    os << "method = " << rep.method << "\n";
    os << "sigma* = " << policy_text(rep.sigma_star) << "\n";
    os << "lambda = " << to_string(rep.perturbed_eigenpair.lambda) << "\n";
    os << "u      =";
    for (Eigen::Index i = 0; i < rep.perturbed_eigenpair.u.size(); ++i)
        os << " " << to_string(rep.perturbed_eigenpair.u(i));
    os << "\n";
    if (rep.spec.has_value())
        os << "M = " << to_string(rep.spec->M) << ", eps = " << to_string(rep.spec->eps)
           << ", D = " << rep.spec->D.str() << "\n";
    os << "iterations = " << rep.trace.size() << "\n";
    for (const auto& entry : rep.trace)
        os << "  k=" << entry.k << " lambda=" << to_string(entry.lambda) << " sigma="
           << policy_text(entry.sigma) << "\n";
    return os.str();
}

std::string oracle_report_json(const OracleReport& rep) {
    json doc;
    doc["schema"] = 1;
    doc["kind"] = "oracle";
    doc["chibar"] = to_string(rep.chibar);
    doc["chibar_lossy_float"] = rep.chibar.to_double_lossy();
    doc["chi"] = rat_array(rep.chi);
    doc["sigma"] = policy_json(rep.attaining_sigma);
    json ws = json::array();
    for (const auto& w : rep.witnesses) {
        json jw;
        jw["final_class"] = w.final_class;
        jw["measure"] = rat_array(w.measure);
        jw["value"] = to_string(w.value);
        jw["tau"] = policy_json(w.tau);
        ws.push_back(std::move(jw));
    }
    doc["witnesses"] = std::move(ws);
    return doc.dump(2) + "\n";
}

std::string oracle_report_text(const OracleReport& rep) {
    std::ostringstream os;
    os << "chibar = " << to_string(rep.chibar) << "\n";
    os << "chi    =";
    for (Eigen::Index i = 0; i < rep.chi.size(); ++i) os << " " << to_string(rep.chi(i));
    os << "\n";
    os << "sigma  = " << policy_text(rep.attaining_sigma) << "\n";
    os << "witnesses:\n";
    for (const auto& w : rep.witnesses) {
        os << "  measure =";
        for (Eigen::Index i = 0; i < w.measure.size(); ++i) os << " " << to_string(w.measure(i));
        os << "  value = " << to_string(w.value) << "\n";
    }
    return os.str();
}

unsigned long report_bit_length(const SolveReport& rep) {
    unsigned long bits = 0;
    auto feed = [&bits](const Rat& r) {
        bits = std::max(bits, bit_length(r.num()));
        bits = std::max(bits, bit_length(r.den()));
    };
    feed(rep.chibar);
    feed(rep.perturbed_eigenpair.lambda);
    for (Eigen::Index i = 0; i < rep.perturbed_eigenpair.u.size(); ++i)
        feed(rep.perturbed_eigenpair.u(i));
    for (const auto& entry : rep.trace) feed(entry.lambda);
    return bits;
}

}  // namespace mpg
