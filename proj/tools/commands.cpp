#include "commands.hpp"

#include <cstdio>
#include <iostream>
#include <span>

#include "vixbns/hedging.hpp"
#include "vixbns/sweep.hpp"

namespace vixbns::cli {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

template <class... Cols>
void row(std::ostream& out, const Cols&... cols) {
  bool first = true;
  ((out << (first ? "" : ",") << cols, first = false), ...);
  out << '\n';
}

}  // namespace

int cmd_price(const RunConfig& cfg, std::ostream& out) {
  const ModelParams p(cfg.model);
  PriceResult r;
  if (cfg.method == PriceMethod::Fft) {
    const double strikes[] = {cfg.K};
    r = price_via_fft(p, cfg.state, cfg.T, strikes, cfg.alpha, cfg.numerics).front();
  } else {
    r = price(p, cfg.state, cfg.T, cfg.K, cfg.alpha, cfg.numerics);
  }
  if (r.residual_warning)
    std::cerr << "warning: imaginary residual " << num(r.im_residual) << " exceeds 100 abs_tol\n";
  out << "t,T,K,alpha,eps,price,method,im_residual\n";
  row(out, num(cfg.state.t), num(cfg.T), num(cfg.K), num(cfg.alpha), num(cfg.numerics.eps),
      num(r.price), to_string(r.method), num(r.im_residual));
  return kOk;
}

int cmd_hedge(const RunConfig& cfg, std::ostream& out) {
  const ModelParams p(cfg.model);
  const HedgeResult h = hedge(p, cfg.state, cfg.T, cfg.K, cfg.alpha, cfg.numerics);
  out << "t,T,K,alpha,eps,xi,eta,price\n";
  row(out, num(cfg.state.t), num(cfg.T), num(cfg.K), num(cfg.alpha), num(cfg.numerics.eps),
      num(h.xi), num(h.eta), num(h.price));
  return kOk;
}

int cmd_sweep(const RunConfig& cfg, Axis axis, std::ostream& out) {
  const ModelParams p(cfg.model);
  SweepOptions opts;
  opts.method = cfg.method;
  std::vector<SweepPoint> pts;
  if (axis == Axis::Time) {
    const auto times = axis_grid(cfg.t_min, cfg.t_max, cfg.t_step);
    pts = sweep_times(p, cfg.state, times, cfg.T, cfg.K, cfg.alpha, cfg.numerics, opts);
  } else {
    const auto strikes = axis_grid(cfg.K_min, cfg.K_max, cfg.K_step);
    pts = sweep_strikes(p, cfg.state, cfg.T, strikes, cfg.alpha, cfg.numerics, opts);
  }
  out << "t,T,K,alpha,eps,price,xi,eta\n";
  for (const SweepPoint& s : pts)
    row(out, num(s.t), num(s.T), num(s.K), num(s.alpha), num(s.eps), num(s.price), num(s.xi),
        num(s.eta));
  return kOk;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const ModelParams p(cfg.model);
  const ConditionReport rep = check_conditions(p, cfg.T);
  const bool eps_ok = !rep.requires_eps || cfg.numerics.eps > 0.0;
  const bool price_ok = rep.u_hat_positive && rep.cf_bounded && eps_ok;
  const bool hedge_ok = price_ok && rep.hedge_condition;
  auto yn = [](bool b) { return b ? "yes" : "no"; };

  out << "variant: " << to_string(p.variant()) << '\n'
      << "u_hat: " << num(rep.u_hat) << '\n'
      << "u_hat > 0: " << yn(rep.u_hat_positive) << '\n'
      << "cf integrable against the payoff: " << yn(rep.cf_integrable) << '\n'
      << "cf bounded on the damped line: " << yn(rep.cf_bounded) << '\n'
      << "pricing path: " << (rep.requires_eps ? "eps-regularised" : "direct") << '\n'
      << "2 B(T): " << num(rep.two_b_maturity) << '\n'
      << "2 B(T) < u_hat (hedge condition): " << yn(rep.hedge_condition) << '\n';
  if (rep.requires_eps && !eps_ok) out << "note: eps must be > 0 for this variant\n";

  bool all_ok = true;
  for (const std::string& op : cfg.ops) {
    const bool ok = op == "price" ? price_ok : hedge_ok;
    out << op << ": " << (ok ? "allowed" : "disallowed") << '\n';
    all_ok = all_ok && ok;
  }
  return all_ok ? kOk : kValidationFailed;
}

}  // namespace vixbns::cli
