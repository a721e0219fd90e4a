#include "lsfrp/lp/lp_format.hpp"

#include <cmath>
#include <ostream>
#include <string>

namespace lsfrp::lp {

namespace {

std::string var_name(const LinearModel& model, int j) {
  const std::string& name = model.var(j).name;
  return name.empty() ? "x" + std::to_string(j) : name;
}

void write_terms(std::ostream& out, const LinearModel& model, const std::vector<Term>& terms) {
  bool first = true;
  int on_line = 0;
  for (const Term& t : terms) {
    if (t.coef == 0.0) continue;
    if (!first) out << (t.coef < 0 ? " - " : " + ");
    else if (t.coef < 0) out << "- ";
    out << std::abs(t.coef) << ' ' << var_name(model, t.var);
    first = false;
    if (++on_line % 8 == 0) out << "\n   ";
  }
  if (first) out << "0 " << var_name(model, 0);
}

}  // namespace

void write_lp(const LinearModel& model, std::ostream& out) {
  out.precision(17);
  out << "\\ generated by lsfrp\nMaximize\n obj: ";
  std::vector<Term> obj;
  for (int j = 0; j < model.num_vars(); ++j)
    if (model.var(j).obj != 0.0) obj.push_back({j, model.var(j).obj});
  if (obj.empty() && model.num_vars() > 0) obj.push_back({0, 0.0});
  write_terms(out, model, obj);
  if (model.objective_offset() != 0.0) out << " + " << model.objective_offset() << " __offset";
  out << "\nSubject To\n";
  for (int i = 0; i < model.num_rows(); ++i) {
    const Constraint& row = model.row(i);
    out << ' ' << (row.name.empty() ? "r" + std::to_string(i) : row.name) << ": ";
    write_terms(out, model, row.terms);
    out << (row.sense == Sense::le ? " <= " : row.sense == Sense::ge ? " >= " : " = ") << row.rhs << '\n';
  }
  out << "Bounds\n";
  if (model.objective_offset() != 0.0) out << " __offset = 1\n";
  for (int j = 0; j < model.num_vars(); ++j) {
    const Variable& v = model.var(j);
    const std::string name = var_name(model, j);
    if (v.lb == -kInf && v.ub == kInf) out << ' ' << name << " free\n";
    else if (v.lb == v.ub) out << ' ' << name << " = " << v.lb << '\n';
    else {
      out << ' ';
      if (v.lb == -kInf) out << "-inf";
      else out << v.lb;
      out << " <= " << name;
      if (v.ub < kInf) out << " <= " << v.ub;
      out << '\n';
    }
  }
  bool any_int = false;
  for (int j = 0; j < model.num_vars(); ++j)
    if (model.var(j).integer) {
      if (!any_int) out << "General\n";
      any_int = true;
      out << ' ' << var_name(model, j) << '\n';
    }
  out << "End\n";
}

}  // namespace lsfrp::lp
