#include "mpcbench/lp/lp_format.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace mpcbench::lp {

namespace {

std::string var_name(const LpProblem& p, int j) {
    const auto& n = p.name(j);
    return n.empty() ? "x" + std::to_string(j) : n;
}

void write_number(std::ostream& out, double v) {
    if (std::isinf(v)) {
        out << (v > 0 ? "+inf" : "-inf");
    } else {
        out << v;
    }
}

void write_term(std::ostream& out, double coef, const std::string& name, bool first) {
    if (coef < 0) {
        out << (first ? "-" : " - ");
    } else if (!first) {
        out << " + ";
    }
    out << std::abs(coef) << ' ' << name;
}

}  // namespace

void write_lp_format(std::ostream& out, const LpProblem& p) {
    const auto old_precision = out.precision(17);
    out << "\\ mpcbench LP dump: " << p.num_vars() << " variables, " << p.num_rows() << " rows\n";
    out << "Minimize\n obj:";
    bool first = true;
    for (std::size_t j = 0; j < p.num_vars(); ++j) {
        if (p.cost()[j] == 0.0) continue;
        out << ' ';
        write_term(out, p.cost()[j], var_name(p, static_cast<int>(j)), first);
        first = false;
    }
    if (first) out << " 0 " << var_name(p, 0);
    out << "\nSubject To\n";
    for (std::size_t i = 0; i < p.num_rows(); ++i) {
        const Row& r = p.rows()[i];
        out << " c" << i << ':';
        bool f = true;
        for (std::size_t k = 0; k < r.index.size(); ++k) {
            out << ' ';
            write_term(out, r.coef[k], var_name(p, r.index[k]), f);
            f = false;
        }
        if (f) out << " 0 " << var_name(p, 0);
        switch (r.relation) {
            case Relation::LessEqual: out << " <= "; break;
            case Relation::GreaterEqual: out << " >= "; break;
            case Relation::Equal: out << " = "; break;
        }
        out << r.rhs << '\n';
    }
    out << "Bounds\n";
    for (std::size_t j = 0; j < p.num_vars(); ++j) {
        const Bounds& b = p.bounds()[j];
        const std::string name = var_name(p, static_cast<int>(j));
        if (std::isinf(b.lower) && std::isinf(b.upper)) {
            out << ' ' << name << " free\n";
        } else {
            out << ' ';
            write_number(out, b.lower);
            out << " <= " << name << " <= ";
            write_number(out, b.upper);
            out << '\n';
        }
    }
    out << "End\n";
    out.precision(old_precision);
}

void write_lp_format(const std::filesystem::path& path, const LpProblem& problem) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    write_lp_format(out, problem);
}

}  // namespace mpcbench::lp
