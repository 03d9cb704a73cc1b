#include "benfordlab/cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <memory>
#include <ostream>
#include <stdexcept>

#include "benfordlab/closedform/closedform.hpp"
#include "benfordlab/digitcount/digitcount.hpp"
#include "benfordlab/diophantine/diophantine.hpp"
#include "benfordlab/errors.hpp"
#include "benfordlab/hiprec/continued_fraction.hpp"
#include "benfordlab/hiprec/precision.hpp"
#include "benfordlab/stats/stats.hpp"

namespace benford::cli {
namespace {

using hiprec::ExactReal;
using hiprec::Q64;
using nlohmann::ordered_json;

// Fractional digits for exact values in JSON, and for Q64 series values.
constexpr unsigned kExactDigits = 30;
constexpr unsigned kSeriesDigits = 20;
constexpr std::uint64_t kProgressThreshold = 10000000;

std::string trim(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string decimal(const ExactReal& x, unsigned digits) {
  return x.realize(64 + 4 * digits).to_decimal(digits);
}

std::string series_value(const ExactReal& x) {
  return Q64::from_prec_real(x.realize(192)).to_decimal(kSeriesDigits);
}

std::string number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct Options {
  std::string base = "2";
  long digit = 1;
  std::uint64_t n = 1000;
  long radix = 10;
  unsigned bits = 0;
  unsigned threads = 0;
  std::uint64_t stride = 1;
  std::size_t bins = 100;
  long k = 1;
  std::string s = "0";
  std::string alpha;
  std::string alpha_base;
  std::size_t samples = stats::Reservoir::kDefaultCapacity;
  long a_max = 1200;
  std::string format;
  std::string out;
  std::string sidecar;
};

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::invalid_argument("cannot open output file " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

bool want_json(const Options& o, const char* fallback) {
  const std::string f = o.format.empty() ? fallback : o.format;
  return f == "json";
}

void progress(std::ostream& err, const Options& o, const std::string& what) {
  if (o.n >= kProgressThreshold) err << what << std::endl;
}

ExactReal alpha_of(const Options& o) {
  if (!o.alpha.empty()) return parse_expression(o.alpha).to_exact(o.radix);
  return digitcount::benford_alpha(parse_rational(o.alpha_base.empty() ? o.base : o.alpha_base), o.radix);
}

void cmd_count(const Options& o, std::ostream& out, std::ostream& err) {
  const mpq_class a = parse_rational(o.base);
  progress(err, o, "count: base " + a.get_str() + ", N = " + std::to_string(o.n) + ", " +
                       std::to_string(digitcount::resolve_threads(o.threads)) + " threads");
  const digitcount::DigitCountReport rep = digitcount::count_digits(a, o.n, o.radix, o.threads, o.bits);
  progress(err, o, "count: done");

  ordered_json j = {{"command", "count"}, {"base", a.get_str()}, {"radix", rep.radix}, {"N", rep.n},
                    {"bits", rep.bits},   {"digits", kExactDigits}};
  j["rows"] = ordered_json::array();
  for (long d = 1; d < rep.radix; ++d) {
    j["rows"].push_back({{"digit", d},
                         {"prediction", decimal(rep.prediction(d), kExactDigits)},
                         {"actual", rep.count(d)},
                         {"error", decimal(rep.error(d), kExactDigits)}});
  }
  if (!o.sidecar.empty()) {
    std::ofstream side(o.sidecar);
    if (!side) throw std::invalid_argument("cannot open sidecar file " + o.sidecar);
    side << j.dump(2) << '\n';
  }
  if (want_json(o, "csv")) {
    out << j.dump(2) << '\n';
    return;
  }
  out << "digit,prediction,actual,error\n";
  for (long d = 1; d < rep.radix; ++d) {
    out << d << ',' << decimal(rep.prediction(d), 2) << ',' << rep.count(d) << ',' << decimal(rep.error(d), 2)
        << '\n';
  }
}

ordered_json classification_json(const diophantine::Classification& c) {
  return {{"base", c.base.get_str()}, {"digit", c.digit}, {"radix", c.radix}, {"verdict", diophantine::verdict_name(c.verdict)},
          {"k", c.k},                 {"m", c.m},         {"witness", c.witness}};
}

void classification_csv(const diophantine::Classification& c, std::ostream& out) {
  out << c.base.get_str() << ',' << c.digit << ',' << c.radix << ',' << diophantine::verdict_name(c.verdict) << ','
      << c.k << ',' << c.m << ',' << c.witness << '\n';
}

void cmd_classify(const Options& o, std::ostream& out) {
  const diophantine::Classification c = diophantine::classify(parse_rational(o.base), o.digit, o.radix);
  if (want_json(o, "json")) {
    out << classification_json(c).dump(2) << '\n';
    return;
  }
  out << "base,digit,radix,verdict,k,m,witness\n";
  classification_csv(c, out);
}

void cmd_enumerate(const Options& o, bool one_digit, std::ostream& out) {
  std::vector<diophantine::Classification> rows;
  for (long d = one_digit ? o.digit : 1; d <= (one_digit ? o.digit : o.radix - 1); ++d) {
    for (long a : diophantine::enumerate_bounded_bases(d, o.a_max, o.radix)) {
      rows.push_back(diophantine::classify(a, d, o.radix));
    }
  }
  if (want_json(o, "csv")) {
    ordered_json j = ordered_json::array();
    for (const auto& c : rows) j.push_back(classification_json(c));
    out << j.dump(2) << '\n';
    return;
  }
  out << "base,digit,radix,verdict,k,m,witness\n";
  for (const auto& c : rows) classification_csv(c, out);
}

digitcount::ErrorSeries series_for(const Options& o, std::uint64_t stride, std::ostream& err) {
  const mpq_class a = parse_rational(o.base);
  progress(err, o, "series: base " + a.get_str() + ", digit " + std::to_string(o.digit) + ", N = " + std::to_string(o.n));
  digitcount::ErrorSeries s = digitcount::error_series(a, o.digit, o.n, o.radix, stride, o.threads);
  progress(err, o, "series: done");
  return s;
}

void cmd_errors(const Options& o, std::ostream& out, std::ostream& err) {
  const digitcount::ErrorSeries s = series_for(o, o.stride, err);
  if (want_json(o, "csv")) {
    ordered_json j = {{"command", "errors"}, {"base", s.base.get_str()}, {"digit", s.digit}, {"radix", s.radix},
                      {"N", s.n_max},        {"stride", s.stride},       {"digits", kSeriesDigits},
                      {"min", s.min.to_decimal(kSeriesDigits)},          {"argmin", s.argmin},
                      {"max", s.max.to_decimal(kSeriesDigits)},          {"argmax", s.argmax}};
    j["values"] = ordered_json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
      j["values"].push_back({{"n", s.indices[i]}, {"value", s.values[i].to_decimal(kSeriesDigits)}});
    }
    out << j.dump(2) << '\n';
    return;
  }
  out << "n,value\n";
  for (std::size_t i = 0; i < s.size(); ++i) out << s.indices[i] << ',' << s.values[i].to_decimal(kSeriesDigits) << '\n';
}

void cmd_hist(const Options& o, std::ostream& out, std::ostream& err) {
  const stats::Histogram h = stats::histogram(series_for(o, o.stride, err), o.bins);
  if (want_json(o, "csv")) {
    ordered_json j = {{"command", "hist"}, {"total", h.total}, {"observed_min", h.observed_min},
                      {"observed_max", h.observed_max}};
    j["edges"] = h.edges;
    j["counts"] = h.counts;
    out << j.dump(2) << '\n';
    return;
  }
  out << "bin_lo,bin_hi,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out << number(h.edges[i]) << ',' << number(h.edges[i + 1]) << ',' << h.counts[i] << '\n';
  }
}

void cmd_records(const Options& o, std::ostream& out, std::ostream& err) {
  const digitcount::ErrorSeries s = series_for(o, 1, err);
  const std::vector<stats::RecordHit> records = stats::record_hits(s);
  const unsigned bits = std::max(256u, hiprec::default_bits(o.n) + 64);
  const hiprec::CFExpansion cf = hiprec::continued_fraction(digitcount::benford_alpha(s.base, s.radix).realize(bits));
  const auto nearest_q = [&](std::uint64_t n) {
    const mpz_class target = hiprec::to_mpz(n);
    mpz_class best = cf.convergents.front().second;
    for (const auto& [p, q] : cf.convergents) {
      if (abs(q - target) < abs(best - target)) best = q;
    }
    return best.get_str();
  };
  if (want_json(o, "csv")) {
    ordered_json j = ordered_json::array();
    for (const auto& r : records) {
      j.push_back({{"n", r.n}, {"abs_error", r.abs_error.to_decimal(kSeriesDigits)}, {"nearest_q", nearest_q(r.n)}});
    }
    out << j.dump(2) << '\n';
    return;
  }
  out << "n,abs_error,nearest_q\n";
  for (const auto& r : records) out << r.n << ',' << r.abs_error.to_decimal(kSeriesDigits) << ',' << nearest_q(r.n) << '\n';
}

void cmd_cf(const Options& o, std::ostream& out) {
  const ExactReal alpha = alpha_of(o);
  const unsigned bits = o.bits == 0 ? 256 : o.bits;
  const hiprec::CFExpansion cf = hiprec::continued_fraction(alpha.realize(bits));
  const std::vector<double> ratios = cf.certified >= 2 ? stats::lindeberg_ratios(cf) : std::vector<double>{};
  if (want_json(o, "json")) {
    ordered_json j = {{"command", "cf"}, {"alpha", alpha.to_string()}, {"bits", bits}, {"certified", cf.certified}};
    j["quotients"] = ordered_json::array();
    j["convergents"] = ordered_json::array();
    for (std::size_t i = 0; i < cf.quotients.size(); ++i) {
      j["quotients"].push_back(cf.quotients[i].get_str());
      j["convergents"].push_back({cf.convergents[i].first.get_str(), cf.convergents[i].second.get_str()});
    }
    j["lindeberg"] = ratios;
    out << j.dump(2) << '\n';
    return;
  }
  out << "index,quotient,p,q,lindeberg\n";
  for (std::size_t i = 0; i < cf.quotients.size(); ++i) {
    out << i << ',' << cf.quotients[i].get_str() << ',' << cf.convergents[i].first.get_str() << ','
        << cf.convergents[i].second.get_str() << ',';
    if (i >= 1 && i - 1 < ratios.size()) out << number(ratios[i - 1]);
    out << '\n';
  }
}

void cmd_ostrowski(const Options& o, std::ostream& out) {
  const closedform::OstrowskiSpec spec{alpha_of(o), o.k, parse_expression(o.s).to_exact(o.radix)};
  const ExactReal delta = closedform::ostrowski_delta(spec, o.n);
  if (want_json(o, "csv")) {
    const hiprec::UnitInterval interval = spec.interval();
    ordered_json j = {{"command", "ostrowski"},
                      {"alpha", spec.alpha.to_string()},
                      {"k", spec.k},
                      {"s", spec.s.to_string()},
                      {"N", o.n},
                      {"digits", kExactDigits},
                      {"interval_lo", decimal(interval.lo(), kExactDigits)},
                      {"interval_hi", decimal(interval.hi(), kExactDigits)},
                      {"value", decimal(delta, kExactDigits)}};
    out << j.dump(2) << '\n';
    return;
  }
  out << "n,value\n" << o.n << ',' << series_value(delta) << '\n';
}

void cmd_beck(const Options& o, std::ostream& out) {
  const stats::QuadraticIrrational alpha = parse_expression(o.alpha.empty() ? "sqrt2" : o.alpha).to_quadratic(0);
  const stats::QuadraticIrrational s = parse_expression(o.s).to_quadratic(alpha.d);
  const stats::NormalityReport r = stats::beck_clt_experiment(alpha, s, o.n, o.samples);
  ordered_json j = {{"command", "beck"},
                    {"N", r.n},
                    {"samples", r.samples},
                    {"mean", r.mean},
                    {"std", r.std},
                    {"max_abs", r.max_abs},
                    {"ks_vs_normal", r.ks_vs_normal},
                    {"mean_over_log_n", r.mean_over_log_n},
                    {"var_over_log_n", r.var_over_log_n},
                    {"bounded_regime", r.bounded_regime},
                    {"bounded_k", r.bounded_k}};
  if (want_json(o, "json")) {
    out << j.dump(2) << '\n';
    return;
  }
  out << "key,value\n";
  for (const auto& [key, value] : j.items()) {
    if (key != "command") out << key << ',' << (value.is_number_float() ? number(value.get<double>()) : value.dump()) << '\n';
  }
}

}  // namespace

mpq_class parse_rational(const std::string& raw) {
  const std::string text = trim(raw);
  const bool negative = !text.empty() && text[0] == '-';
  const std::string body = negative ? text.substr(1) : text;
  mpq_class q;
  if (const auto slash = body.find('/'); slash != std::string::npos) {
    const std::string num = body.substr(0, slash);
    const std::string den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw std::invalid_argument("not a rational: '" + raw + "'");
    if (mpz_class(den, 10) == 0) throw std::invalid_argument("zero denominator: '" + raw + "'");
    q = mpq_class(mpz_class(num, 10), mpz_class(den, 10));
  } else if (const auto dot = body.find('.'); dot != std::string::npos) {
    const std::string whole = body.substr(0, dot);
    const std::string frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) {
      throw std::invalid_argument("not a decimal: '" + raw + "'");
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    q = mpq_class(mpz_class(whole.empty() ? "0" : whole, 10) * scale + mpz_class(frac, 10), scale);
  } else {
    if (!all_digits(body)) throw std::invalid_argument("not a number: '" + raw + "'");
    q = mpq_class(mpz_class(body, 10));
  }
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

Expression parse_expression(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw std::invalid_argument("empty expression");
  std::vector<std::pair<int, std::string>> terms;
  int sign = 1;
  std::string cur;
  for (char c : text) {
    if (c == '+' || c == '-') {
      if (cur.empty()) {
        sign *= c == '-' ? -1 : 1;
        continue;
      }
      if (cur.back() != '*') {
        terms.emplace_back(sign, cur);
        sign = c == '-' ? -1 : 1;
        cur.clear();
        continue;
      }
    }
    cur += c;
  }
  if (cur.empty()) throw std::invalid_argument("dangling sign in '" + raw + "'");
  terms.emplace_back(sign, cur);

  Expression e;
  for (const auto& [term_sign, term] : terms) {
    mpq_class coeff = term_sign;
    std::string atom = term;
    if (const auto star = term.find('*'); star != std::string::npos) {
      coeff *= parse_rational(term.substr(0, star));
      atom = term.substr(star + 1);
    }
    if (atom.rfind("log", 0) == 0) {
      const mpq_class arg = parse_rational(atom.substr(3));
      if (arg <= 0) throw std::invalid_argument("log of a nonpositive number in '" + raw + "'");
      if (coeff.get_den() != 1) throw std::invalid_argument("log coefficients must be integers in '" + raw + "'");
      e.logs[arg] += coeff.get_num();
    } else if (atom.rfind("sqrt", 0) == 0) {
      const std::string d = atom.substr(4);
      if (!all_digits(d)) throw std::invalid_argument("sqrt needs a positive integer in '" + raw + "'");
      const mpz_class dz(d, 10);
      if (!dz.fits_slong_p()) throw std::invalid_argument("radicand too large in '" + raw + "'");
      const auto radicand = static_cast<std::uint64_t>(dz.get_ui());
      if (e.radicand != 0 && e.radicand != radicand) {
        throw std::invalid_argument("at most one radicand allowed in '" + raw + "'");
      }
      e.radicand = radicand;
      e.sqrt_coeff += coeff;
    } else if (term.find('*') != std::string::npos) {
      throw std::invalid_argument("expected logX or sqrtD after '*' in '" + raw + "'");
    } else {
      e.rational += coeff * parse_rational(atom);
    }
  }
  return e;
}

ExactReal Expression::to_exact(long radix) const {
  ExactReal x = ExactReal::rational(rational);
  for (const auto& [arg, coeff] : logs) {
    if (coeff != 0) x += ExactReal::log(arg, radix) * coeff;
  }
  if (sqrt_coeff != 0) x += ExactReal::sqrt(sqrt_coeff, radicand);
  return x;
}

stats::QuadraticIrrational Expression::to_quadratic(std::int64_t default_radicand) const {
  for (const auto& [arg, coeff] : logs) {
    if (coeff != 0) throw std::invalid_argument("expected a quadratic irrational, got a logarithm");
  }
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), rational.get_den().get_mpz_t(), sqrt_coeff.get_den().get_mpz_t());
  const mpq_class p = rational * r;
  const mpq_class q = sqrt_coeff * r;
  if (!p.get_num().fits_slong_p() || !q.get_num().fits_slong_p() || !r.fits_slong_p()) {
    throw std::invalid_argument("quadratic irrational coefficients too large");
  }
  const auto d = sqrt_coeff != 0 ? static_cast<std::int64_t>(radicand) : default_radicand;
  return {p.get_num().get_si(), q.get_num().get_si(), d, r.get_si()};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Leading digits of geometric sequences and their Benford errors", "benfordlab"};
  app.require_subcommand(1);
  Options o;
  const auto threads_check = CLI::Range(1u, 4096u);
  const auto positive = CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max());

  const auto add_base = [&](CLI::App* c) { c->add_option("--base", o.base, "base a: integer, p/q or decimal"); };
  const auto add_radix = [&](CLI::App* c) { c->add_option("--radix", o.radix, "radix (default 10)"); };
  const auto add_digit = [&](CLI::App* c) { return c->add_option("--digit", o.digit, "leading digit d"); };
  const auto add_n = [&](CLI::App* c) { c->add_option("--N", o.n, "number of terms")->check(positive); };
  const auto add_threads = [&](CLI::App* c) {
    c->add_option("--threads", o.threads, "worker threads (default: BENFORDLAB_THREADS or all cores)")
        ->check(threads_check);
  };
  const auto add_output = [&](CLI::App* c) {
    c->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    c->add_option("--out", o.out, "write data here instead of stdout");
  };

  CLI::App* count = app.add_subcommand("count", "leading-digit counts, predictions and errors");
  add_base(count);
  add_n(count);
  add_radix(count);
  add_threads(count);
  count->add_option("--bits", o.bits, "working precision (default derived from N)");
  count->add_option("--sidecar", o.sidecar, "also write full-precision JSON here");
  add_output(count);

  CLI::App* classify = app.add_subcommand("classify", "bounded or unbounded digit-d error");
  add_base(classify);
  add_digit(classify);
  add_radix(classify);
  add_output(classify);

  CLI::App* enumerate = app.add_subcommand("enumerate", "integer bases with bounded error");
  CLI::Option* enum_digit = add_digit(enumerate);
  enumerate->add_option("--a-max", o.a_max, "largest base (default 1200)");
  add_radix(enumerate);
  add_output(enumerate);

  CLI::App* errors = app.add_subcommand("errors", "series E_d(n), n = 1..N");
  CLI::App* hist = app.add_subcommand("hist", "histogram of E_d(n), n = 1..N");
  CLI::App* records = app.add_subcommand("records", "indices where |E_d(n)| reaches a new minimum");
  for (CLI::App* c : {errors, hist, records}) {
    add_base(c);
    add_digit(c);
    add_n(c);
    add_radix(c);
    add_threads(c);
    add_output(c);
  }
  for (CLI::App* c : {errors, hist}) c->add_option("--stride", o.stride, "record every stride-th index")->check(positive);
  hist->add_option("--bins", o.bins, "number of bins (default 100)");

  CLI::App* cf = app.add_subcommand("cf", "certified continued fraction of log_radix(a) or --alpha");
  add_base(cf);
  add_radix(cf);
  cf->add_option("--alpha", o.alpha, "alpha as an expression, e.g. sqrt2 or 1/2+1/2*sqrt5");
  cf->add_option("--bits", o.bits, "precision of alpha (default 256)");
  add_output(cf);

  CLI::App* ostrowski = app.add_subcommand("ostrowski", "telescoped discrepancy of [s, s + {k alpha})");
  ostrowski->add_option("--alpha-base", o.alpha_base, "alpha = log_radix of this base");
  ostrowski->add_option("--alpha", o.alpha, "alpha as an expression");
  ostrowski->add_option("--k", o.k, "k (nonzero)");
  ostrowski->add_option("--s", o.s, "left endpoint, e.g. log4, 1/10");
  add_n(ostrowski);
  add_radix(ostrowski);
  add_output(ostrowski);

  CLI::App* beck = app.add_subcommand("beck", "discrepancy of [0, s) for a quadratic irrational alpha");
  beck->add_option("--alpha", o.alpha, "alpha as p + q*sqrtD (default sqrt2)");
  beck->add_option("--s", o.s, "right endpoint, e.g. 2/3 or sqrt2-1");
  add_n(beck);
  beck->add_option("--samples", o.samples, "reservoir size for the KS statistic");
  add_output(beck);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    Sink sink(o.out, out);
    std::ostream& data = sink.get();
    if (count->parsed()) cmd_count(o, data, err);
    if (classify->parsed()) cmd_classify(o, data);
    if (enumerate->parsed()) cmd_enumerate(o, enum_digit->count() > 0, data);
    if (errors->parsed()) cmd_errors(o, data, err);
    if (hist->parsed()) cmd_hist(o, data, err);
    if (records->parsed()) cmd_records(o, data, err);
    if (cf->parsed()) cmd_cf(o, data);
    if (ostrowski->parsed()) cmd_ostrowski(o, data);
    if (beck->parsed()) cmd_beck(o, data);
    data.flush();
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kOk;
}

}  // namespace benford::cli
