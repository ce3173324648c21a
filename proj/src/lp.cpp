#include "copos/lp.hpp"

#include <sstream>

namespace copos {

int LinearProgram::add_variable(std::string name, bool nonnegative) {
    names_.push_back(std::move(name));
    nonnegative_.push_back(nonnegative ? 1 : 0);
    return static_cast<int>(names_.size()) - 1;
}

void LinearProgram::add_constraint(std::vector<LpTerm> terms, Relation relation, Rational rhs, std::string label) {
    constraints_.push_back(Constraint{std::move(terms), relation, std::move(rhs), std::move(label)});
}

void LinearProgram::add_le(std::vector<LpTerm> terms, Rational rhs, std::string label) {
    for (auto& t : terms) t.coef = -t.coef;
    add_constraint(std::move(terms), Relation::Ge, -rhs, std::move(label));
}

void LinearProgram::set_objective(std::vector<LpTerm> terms) { objective_ = std::move(terms); }

Rational LinearProgram::lhs(const Constraint& c, const std::vector<Rational>& x) const {
    Rational s;
    for (const auto& t : c.terms) s += t.coef * x[t.var];
    return s;
}

Rational LinearProgram::objective_value(const std::vector<Rational>& x) const {
    Rational s;
    for (const auto& t : objective_) s += t.coef * x[t.var];
    return s;
}

bool LinearProgram::feasible(const std::vector<Rational>& x) const {
    if (static_cast<int>(x.size()) != num_variables()) return false;
    for (int v = 0; v < num_variables(); ++v) {
        if (nonnegative_[v] && x[v].sign() < 0) return false;
    }
    for (const auto& c : constraints_) {
        const Rational l = lhs(c, x);
        if (c.relation == Relation::Eq ? l != c.rhs : l < c.rhs) return false;
    }
    return true;
}

namespace {

void write_terms(std::ostream& os, const LinearProgram& p, const std::vector<LpTerm>& terms) {
    if (terms.empty()) {
        os << "0";
        return;
    }
    for (std::size_t k = 0; k < terms.size(); ++k) {
        if (k > 0) os << " + ";
        os << terms[k].coef.to_string() << "*" << p.name(terms[k].var);
    }
}

}  // namespace

std::string LinearProgram::dump() const {
    std::ostringstream os;
    os << "max ";
    write_terms(os, *this, objective_);
    os << "\n";
    for (const auto& c : constraints_) {
        write_terms(os, *this, c.terms);
        os << (c.relation == Relation::Eq ? " = " : " >= ") << c.rhs.to_string() << "\n";
    }
    return os.str();
}

std::string to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "infeasible";
}

namespace {

class Tableau {
public:
    explicit Tableau(const LinearProgram& p) : p_(p) {
        const int nv = p.num_variables();
        pos_.resize(nv);
        neg_.assign(nv, -1);
        for (int v = 0; v < nv; ++v) {
            pos_[v] = cols_++;
            if (!p.nonnegative(v)) neg_[v] = cols_++;
        }
        const auto& cons = p.constraints();
        m_ = static_cast<int>(cons.size());
        sign_.assign(m_, 1);
        unit_.assign(m_, -1);
        std::vector<int> slack(m_, -1);
        std::vector<int> art(m_, -1);
        for (int i = 0; i < m_; ++i) {
            const auto& c = cons[i];
            if (c.relation == Relation::Ge) {
                slack[i] = cols_++;
                if (c.rhs.sign() <= 0) {
                    sign_[i] = -1;
                    unit_[i] = slack[i];
                    continue;
                }
            } else if (c.rhs.sign() < 0) {
                sign_[i] = -1;
            }
            art[i] = cols_++;
            unit_[i] = art[i];
        }
        artificial_.assign(cols_, 0);
        a_.assign(m_, std::vector<Rational>(cols_));
        b_.resize(m_);
        basis_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            const auto& c = cons[i];
            const Rational s(sign_[i]);
            for (const auto& t : c.terms) {
                a_[i][pos_[t.var]] += s * t.coef;
                if (neg_[t.var] >= 0) a_[i][neg_[t.var]] -= s * t.coef;
            }
            b_[i] = s * c.rhs;
            if (slack[i] >= 0) a_[i][slack[i]] = sign_[i] > 0 ? Rational(-1) : Rational(1);
            if (art[i] >= 0) {
                a_[i][art[i]] = 1;
                artificial_[art[i]] = 1;
            }
            basis_[i] = unit_[i];
        }
        r_.assign(cols_, Rational());
    }

    LpOutcome solve() {
        LpOutcome out;
        if (!phase_one(out)) return out;
        phase_two(out);
        return out;
    }

private:
    bool phase_one(LpOutcome& out) {
        for (int j = 0; j < cols_; ++j) r_[j] = artificial_[j] ? Rational(1) : Rational(0);
        r_rhs_ = 0;
        for (int i = 0; i < m_; ++i) {
            if (!artificial_[basis_[i]]) continue;
            for (int j = 0; j < cols_; ++j) {
                if (!a_[i][j].is_zero()) r_[j] -= a_[i][j];
            }
            r_rhs_ -= b_[i];
        }
        iterate();
        if (r_rhs_.sign() < 0) {
            out.status = LpStatus::Infeasible;
            out.farkas.resize(m_);
            for (int i = 0; i < m_; ++i) {
                Rational pi = r_[unit_[i]];
                if (artificial_[unit_[i]]) pi -= 1;
                out.farkas[i] = sign_[i] > 0 ? -pi : pi;
            }
            out.pivots = pivots_;
            return false;
        }
        // Pivot zero-level artificials out of the basis; rows where that fails are redundant.
        std::vector<char> keep(m_, 1);
        for (int i = 0; i < m_; ++i) {
            if (!artificial_[basis_[i]]) continue;
            int q = -1;
            for (int j = 0; j < cols_ && q < 0; ++j) {
                if (!artificial_[j] && !a_[i][j].is_zero()) q = j;
            }
            if (q >= 0) {
                pivot(i, q);
            } else {
                keep[i] = 0;
            }
        }
        int w = 0;
        for (int i = 0; i < m_; ++i) {
            if (!keep[i]) continue;
            if (w != i) {
                a_[w] = std::move(a_[i]);
                b_[w] = std::move(b_[i]);
                basis_[w] = basis_[i];
            }
            ++w;
        }
        m_ = w;
        a_.resize(m_);
        b_.resize(m_);
        basis_.resize(m_);
        return true;
    }

    void phase_two(LpOutcome& out) {
        std::vector<Rational> cost(cols_);
        for (const auto& t : p_.objective()) {
            cost[pos_[t.var]] += t.coef;
            if (neg_[t.var] >= 0) cost[neg_[t.var]] -= t.coef;
        }
        for (int j = 0; j < cols_; ++j) r_[j] = -cost[j];
        r_rhs_ = 0;
        for (int i = 0; i < m_; ++i) {
            const Rational& cb = cost[basis_[i]];
            if (cb.is_zero()) continue;
            for (int j = 0; j < cols_; ++j) {
                if (!a_[i][j].is_zero()) r_[j] += cb * a_[i][j];
            }
            r_rhs_ += cb * b_[i];
        }
        const int blocked = iterate();
        out.point = primal_point();
        out.pivots = pivots_;
        if (blocked >= 0) {
            out.status = LpStatus::Unbounded;
            std::vector<Rational> d(cols_);
            d[blocked] = 1;
            for (int i = 0; i < m_; ++i) d[basis_[i]] = -a_[i][blocked];
            out.ray = to_variables(d);
            return;
        }
        out.status = LpStatus::Optimal;
        out.value = r_rhs_;
    }

    // Runs Bland pivots until optimal (returns -1) or an unbounded entering column is found.
    int iterate() {
        for (;;) {
            int q = -1;
            for (int j = 0; j < cols_; ++j) {
                if (!artificial_[j] && r_[j].sign() < 0) {
                    q = j;
                    break;
                }
            }
            if (q < 0) return -1;
            int p = -1;
            Rational best;
            for (int i = 0; i < m_; ++i) {
                if (a_[i][q].sign() <= 0) continue;
                Rational ratio = b_[i] / a_[i][q];
                if (p < 0 || ratio < best || (ratio == best && basis_[i] < basis_[p])) {
                    p = i;
                    best = std::move(ratio);
                }
            }
            if (p < 0) return q;
            pivot(p, q);
        }
    }

    void pivot(int p, int q) {
        ++pivots_;
        auto& row = a_[p];
        const Rational piv = row[q];
        nz_.clear();
        for (int j = 0; j < cols_; ++j) {
            if (row[j].is_zero()) continue;
            if (piv != Rational(1)) row[j] /= piv;
            nz_.push_back(j);
        }
        if (piv != Rational(1)) b_[p] /= piv;
        for (int i = 0; i < m_; ++i) {
            if (i == p || a_[i][q].is_zero()) continue;
            const Rational f = a_[i][q];
            for (int j : nz_) a_[i][j].sub_mul(f, row[j]);
            b_[i].sub_mul(f, b_[p]);
        }
        if (!r_[q].is_zero()) {
            const Rational f = r_[q];
            for (int j : nz_) r_[j].sub_mul(f, row[j]);
            r_rhs_.sub_mul(f, b_[p]);
        }
        basis_[p] = q;
    }

    std::vector<Rational> primal_point() const {
        std::vector<Rational> x(cols_);
        for (int i = 0; i < m_; ++i) x[basis_[i]] = b_[i];
        return to_variables(x);
    }

    std::vector<Rational> to_variables(const std::vector<Rational>& cols) const {
        std::vector<Rational> x(pos_.size());
        for (std::size_t v = 0; v < pos_.size(); ++v) {
            x[v] = cols[pos_[v]];
            if (neg_[v] >= 0) x[v] -= cols[neg_[v]];
        }
        return x;
    }

    const LinearProgram& p_;
    int m_ = 0;
    int cols_ = 0;
    std::vector<int> pos_;
    std::vector<int> neg_;
    std::vector<int> sign_;  // -1 where the row was negated to get b >= 0
    std::vector<int> unit_;  // column that started basic in each row
    std::vector<char> artificial_;
    std::vector<std::vector<Rational>> a_;
    std::vector<Rational> b_;
    std::vector<int> basis_;
    std::vector<Rational> r_;  // reduced costs of the maximization
    Rational r_rhs_;           // current objective value
    std::vector<int> nz_;
    int pivots_ = 0;
};

}  // namespace

LpOutcome simplex_solve(const LinearProgram& p) { return Tableau(p).solve(); }

bool verify_farkas(const LinearProgram& p, const std::vector<Rational>& y) {
    const auto& cons = p.constraints();
    if (y.size() != cons.size()) return false;
    std::vector<Rational> col(p.num_variables());
    Rational yb;
    for (std::size_t i = 0; i < cons.size(); ++i) {
        if (cons[i].relation == Relation::Ge && y[i].sign() < 0) return false;
        if (y[i].is_zero()) continue;
        for (const auto& t : cons[i].terms) col[t.var] += y[i] * t.coef;
        yb += y[i] * cons[i].rhs;
    }
    for (int v = 0; v < p.num_variables(); ++v) {
        if (p.nonnegative(v) ? col[v].sign() > 0 : !col[v].is_zero()) return false;
    }
    return yb.sign() > 0;
}

bool verify_ray(const LinearProgram& p, const std::vector<Rational>& ray) {
    if (static_cast<int>(ray.size()) != p.num_variables()) return false;
    for (int v = 0; v < p.num_variables(); ++v) {
        if (p.nonnegative(v) && ray[v].sign() < 0) return false;
    }
    for (const auto& c : p.constraints()) {
        const Rational l = p.lhs(c, ray);
        if (c.relation == Relation::Eq ? !l.is_zero() : l.sign() < 0) return false;
    }
    return p.objective_value(ray).sign() > 0;
}

}  // namespace copos
