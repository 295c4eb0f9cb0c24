#include "tct/harness/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include "tct/errors.hpp"

namespace tct {

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct GroupKey {
  std::string teacher, learner, dataset;
  bool operator<(const GroupKey& o) const {
    return std::tie(teacher, learner, dataset) <
           std::tie(o.teacher, o.learner, o.dataset);
  }
};

}  // namespace

std::vector<CurveRow> curve_table(const RunArchive& archive,
                                  const std::vector<double>& grid) {
  std::map<GroupKey, std::vector<CurveInput>> groups;
  for (const ArchiveEntry& e : archive.entries()) {
    if (!e.error.empty() || !e.t_full_valid) continue;
    CurveInput input{&e.run, e.t_full, e.baseline_acc};
    groups[{e.run.teacher_id, e.run.learner_id, e.dataset}].push_back(input);
    groups[{e.run.teacher_id, e.run.learner_id, "all"}].push_back(input);
  }
  std::vector<CurveRow> rows;
  for (const auto& [key, inputs] : groups) {
    std::vector<CurvePoint> points = normalized_curve(inputs, grid);
    for (const CurvePoint& p : points)
      rows.push_back({key.teacher, key.learner, key.dataset, p});
  }
  return rows;
}

std::vector<WinLossRow> win_loss_table(const RunArchive& archive) {
  // Mean final accuracy per (learner, dataset, teacher), then pairwise
  // significance per (learner, dataset).
  struct Acc {
    double sum = 0.0;
    int n = 0;
    std::size_t m_test = 0;
  };
  std::map<std::pair<std::string, std::string>, std::map<std::string, Acc>>
      table;
  for (const ArchiveEntry& e : archive.entries()) {
    if (!e.error.empty() || std::isnan(e.final_test_acc)) continue;
    Acc& acc = table[{e.run.learner_id, e.dataset}][e.run.teacher_id];
    acc.sum += e.final_test_acc;
    acc.n += 1;
    acc.m_test = e.test_size;
  }
  std::vector<WinLossRow> rows;
  for (const auto& [key, teachers] : table) {
    for (auto a = teachers.begin(); a != teachers.end(); ++a) {
      for (auto b = std::next(a); b != teachers.end(); ++b) {
        WinLossRow row;
        row.learner = key.first;
        row.dataset = key.second;
        row.teacher_a = a->first;
        row.teacher_b = b->first;
        row.acc_a = a->second.sum / a->second.n;
        row.acc_b = b->second.sum / b->second.n;
        row.m_test = std::max<std::size_t>(1, a->second.m_test);
        row.result = win_loss_test(row.acc_a, row.acc_b, row.m_test);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

namespace {

void write_trace_csv(const RunArchive& archive, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("emit_reports: cannot write " + path);
  out << "run_id,teacher,learner,dataset,seed,round,s_size,model_train_size,"
         "added_random,added_wrong,batch1_size,batch2_size,batch2_capped,"
         "acc1,acc2,pooled_acc,ci_lower,alpha_used,elapsed,within_budget,"
         "is_best,fallback,shortfall,sent_count,wrong_weight_sum,"
         "weight_doublings,log2_n,restarted,rejection_draws,probe_error,"
         "test_acc\n";
  for (const ArchiveEntry& e : archive.entries()) {
    for (const RoundRecord& r : e.run.rounds) {
      out << e.run_id << ',' << e.run.teacher_id << ',' << e.run.learner_id
          << ',' << e.dataset << ',' << e.run.seed << ',' << r.round << ','
          << r.s_size << ',' << r.model_train_size << ',' << r.added_random
          << ',' << r.added_wrong << ',' << r.batch1_size << ','
          << r.batch2_size << ',' << (r.batch2_capped ? 1 : 0) << ','
          << fmt(r.acc1) << ',' << fmt(r.acc2) << ',' << fmt(r.pooled_acc)
          << ',' << fmt(r.ci_lower) << ',' << fmt(r.alpha_used) << ','
          << fmt(r.elapsed_end) << ',' << (r.within_budget ? 1 : 0) << ','
          << (r.is_best ? 1 : 0) << ',' << (r.fallback ? 1 : 0) << ','
          << r.shortfall << ',' << r.sent_count << ','
          << fmt(r.wrong_weight_sum) << ',' << r.weight_doublings << ','
          << fmt(r.log2_n) << ',' << (r.restarted ? 1 : 0) << ','
          << r.rejection_draws << ',' << fmt(r.probe_error) << ','
          << fmt(r.test_accuracy) << '\n';
    }
  }
}

void write_curves_csv(const std::vector<CurveRow>& rows,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("emit_reports: cannot write " + path);
  out << "teacher,learner,dataset,t,mean_acc,n_runs\n";
  for (const CurveRow& row : rows)
    out << row.teacher << ',' << row.learner << ',' << row.dataset << ','
        << fmt(row.point.t) << ',' << fmt(row.point.mean_acc) << ','
        << row.point.n_runs << '\n';
}

void write_winloss_csv(const std::vector<WinLossRow>& rows,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("emit_reports: cannot write " + path);
  out << "learner,dataset,teacher_a,teacher_b,acc_a,acc_b,m_test,result\n";
  for (const WinLossRow& row : rows) {
    const char* verdict = row.result == WinLoss::a_wins   ? "a_wins"
                          : row.result == WinLoss::b_wins ? "b_wins"
                                                          : "tie";
    out << row.learner << ',' << row.dataset << ',' << row.teacher_a << ','
        << row.teacher_b << ',' << fmt(row.acc_a) << ',' << fmt(row.acc_b)
        << ',' << row.m_test << ',' << verdict << '\n';
  }
}

void write_svg(const std::vector<CurveRow>& rows, const std::string& path) {
  // One polyline per (teacher, learner) over the "all" aggregate.
  std::map<std::string, std::vector<const CurveRow*>> series;
  for (const CurveRow& row : rows)
    if (row.dataset == "all")
      series[row.teacher + "/" + row.learner].push_back(&row);

  const double width = 640, height = 420, margin = 50;
  std::ofstream out(path);
  if (!out) throw IoError("emit_reports: cannot write " + path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width
      << "' height='" << height << "'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<line x1='" << margin << "' y1='" << height - margin << "' x2='"
      << width - margin << "' y2='" << height - margin
      << "' stroke='black'/>\n";
  out << "<line x1='" << margin << "' y1='" << margin << "' x2='" << margin
      << "' y2='" << height - margin << "' stroke='black'/>\n";
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};
  int series_idx = 0;
  double label_y = margin;
  for (const auto& [name, points] : series) {
    const char* color = colors[series_idx % 6];
    out << "<polyline fill='none' stroke='" << color << "' points='";
    for (const CurveRow* row : points) {
      double x = margin + row->point.t * (width - 2 * margin);
      double y = height - margin - row->point.mean_acc * (height - 2 * margin);
      out << x << ',' << y << ' ';
    }
    out << "'/>\n";
    out << "<text x='" << width - margin - 180 << "' y='" << label_y
        << "' fill='" << color << "' font-size='12'>" << name << "</text>\n";
    label_y += 16;
    ++series_idx;
  }
  out << "</svg>\n";
}

}  // namespace

void emit_reports(const RunArchive& archive, const std::string& out_dir,
                  const ReportOptions& options) {
  if (archive.entries().empty())
    throw std::invalid_argument("emit_reports: empty archive");
  std::filesystem::create_directories(out_dir);

  write_trace_csv(archive, out_dir + "/trace.csv");
  std::vector<CurveRow> curves = curve_table(archive, options.grid);
  write_curves_csv(curves, out_dir + "/curves.csv");
  write_winloss_csv(win_loss_table(archive), out_dir + "/winloss.csv");

  nlohmann::json configs = nlohmann::json::array();
  for (const ArchiveEntry& e : archive.entries())
    configs.push_back({{"run_id", e.run_id}, {"config", e.config}});
  std::ofstream cfg(out_dir + "/config.json");
  if (!cfg) throw IoError("emit_reports: cannot write config.json");
  cfg << configs.dump(2) << "\n";

  if (options.svg_plot) write_svg(curves, out_dir + "/curves.svg");
}

}  // namespace tct
