// Copyright 2026 The srlproj Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// srlproj: command-line driver for the projection and curation pipeline.
//
//   srlproj project --src en.conll --tgt de.conll --src-emb en.embjsonl
//       --tgt-emb de.embjsonl --mode s2t --k 2 --out de.proj.conll
//   srlproj evaluate --projected de.proj.conll --gold de.gold.conll
//
// Exit status: 0 success, 1 usage error, 2 data error.

#include <csignal>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "srlproj/agreement.h"
#include "srlproj/alignment.h"
#include "srlproj/bundle.h"
#include "srlproj/config.h"
#include "srlproj/conll.h"
#include "srlproj/curation.h"
#include "srlproj/error.h"
#include "srlproj/evaluation.h"
#include "srlproj/parallel.h"
#include "srlproj/projection.h"
#include "srlproj/service.h"

namespace srlproj {
namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

using nlohmann::json;

void WriteText(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out.flush()) throw Error("failed writing '" + path + "'");
}

void WriteJson(const std::string &path, const json &value) {
  WriteText(path, value.dump(2) + "\n");
}

std::set<std::string> SplitTags(const std::string &list) {
  std::set<std::string> tags;
  std::string item;
  for (char c : list + ",") {
    if (c == ',') {
      if (!item.empty()) tags.insert(item);
      item.clear();
    } else if (c != ' ') {
      item += c;
    }
  }
  return tags;
}

// Options shared by the commands that align and project.
struct PipelineOptions {
  std::string src, tgt, src_emb, tgt_emb, out;
  int k = 2;
  std::string mode = "s2t";
  bool no_filters = false;
  std::string verbal_pos = "VERB,AUX";
  std::string sense_policy = "copy_source";
  int jobs = 1;
  int quality_threshold = 2;
  bool strict_sense = false;
};

struct Flags {
  CLI::Option *k = nullptr;
  CLI::Option *mode = nullptr;
  CLI::Option *no_filters = nullptr;
  CLI::Option *verbal_pos = nullptr;
  CLI::Option *sense_policy = nullptr;
  CLI::Option *jobs = nullptr;
  CLI::Option *quality_threshold = nullptr;
};

// Config-file values fill in whatever was not given on the command line.
void ApplyConfig(const Config &config, const Flags &flags,
                 PipelineOptions *o) {
  auto unset = [](CLI::Option *opt) { return opt == nullptr || opt->count() == 0; };
  if (unset(flags.k)) o->k = config.GetInt("k").value_or(o->k);
  if (unset(flags.mode)) o->mode = config.GetString("mode").value_or(o->mode);
  if (unset(flags.no_filters)) {
    if (auto filters = config.GetBool("filters")) o->no_filters = !*filters;
  }
  if (unset(flags.verbal_pos)) {
    if (auto tags = config.GetList("verbal_pos")) {
      o->verbal_pos.clear();
      for (const std::string &t : *tags) o->verbal_pos += t + ",";
    }
  }
  if (unset(flags.sense_policy)) {
    o->sense_policy = config.GetString("sense_policy").value_or(o->sense_policy);
  }
  if (unset(flags.jobs)) o->jobs = config.GetInt("jobs").value_or(o->jobs);
  if (unset(flags.quality_threshold)) {
    o->quality_threshold =
        config.GetInt("quality_threshold").value_or(o->quality_threshold);
  }
}

ProjectionConfig MakeProjectionConfig(const PipelineOptions &o) {
  ProjectionConfig config;
  config.alignment.k = o.k;
  config.alignment.mode = ParseAlignmentMode(o.mode);
  config.filters_enabled = !o.no_filters;
  config.verbal_pos_tags = SplitTags(o.verbal_pos);
  config.sense_policy = ParseSensePolicy(o.sense_policy);
  config.Validate();
  return config;
}

struct LoadedPairs {
  Corpus source, target;
  EmbeddingBundle source_bundle, target_bundle;
  std::vector<SentencePair> pairs;
};

void LoadPairs(const PipelineOptions &o, LoadedPairs *data) {
  data->source = ReadConllFile(o.src);
  data->target = ReadConllFile(o.tgt);
  data->source_bundle = LoadBundle(o.src_emb);
  data->target_bundle = LoadBundle(o.tgt_emb);
  data->pairs = PairBundles(data->source_bundle, data->target_bundle,
                            data->source, data->target);
}

int RunProject(const PipelineOptions &o) {
  const ProjectionConfig config = MakeProjectionConfig(o);
  LoadedPairs data;
  LoadPairs(o, &data);
  ProjectionResult result = ProjectCorpus(data.pairs, config, o.jobs);
  WriteConllFile(o.out, result.corpus);
  WriteJson(o.out + ".report.json", ToJson(result.report, config));
  std::cout << FormatReport(result.report);
  return 0;
}

int RunAlign(const PipelineOptions &o) {
  const ProjectionConfig config = MakeProjectionConfig(o);
  LoadedPairs data;
  LoadPairs(o, &data);
  std::vector<std::string> lines(data.pairs.size());
  ParallelFor(data.pairs.size(), o.jobs, [&](size_t i) {
    const SentencePair &pair = data.pairs[i];
    json record = ToJson(AlignSentencePair(
        *pair.source_encoding, *pair.target_encoding, config.alignment));
    record["sent_id"] = pair.source->sent_id;
    record["mode"] = AlignmentModeName(config.alignment.mode);
    record["k"] = config.alignment.k;
    lines[i] = record.dump();
  });
  std::string text;
  for (const std::string &line : lines) text += line + "\n";
  WriteText(o.out, text);
  std::cout << "aligned " << data.pairs.size() << " sentence pair(s)\n";
  return 0;
}

int RunEvaluate(const std::string &projected_path, const std::string &gold_path,
                std::string out, bool strict_sense) {
  const Corpus projected = ReadConllFile(projected_path);
  const Corpus gold = ReadConllFile(gold_path);
  EvalOptions options;
  options.strict_sense = strict_sense;
  const EvalReport report = EvaluateProjection(projected, gold, options);
  if (out.empty()) out = projected_path + ".eval.json";
  WriteJson(out, ToJson(report));
  std::cout << FormatEvalReport(report);
  return 0;
}

int RunExportTasks(const PipelineOptions &o) {
  const Corpus source = ReadConllFile(o.src);
  const Corpus target = ReadConllFile(o.tgt);
  const std::vector<AnnotationTask> tasks =
      ExportTasks(source, target, SplitTags(o.verbal_pos));
  WriteTaskFile(o.out, tasks);
  std::cout << "wrote " << tasks.size() << " task(s)\n";
  return 0;
}

int RunMerge(const PipelineOptions &o, const std::string &tasks_path,
             const std::string &responses_path) {
  const std::vector<AnnotationTask> tasks = ReadTaskFile(tasks_path);
  const std::vector<AnnotationResponse> responses =
      ReadResponseFile(responses_path);
  const Corpus target = ReadConllFile(o.tgt);
  MergePolicy policy;
  policy.quality_threshold = o.quality_threshold;
  policy.verbal_pos_tags = SplitTags(o.verbal_pos);
  const MergeResult result = MergeValidated(tasks, responses, target, policy);
  WriteConllFile(o.out, result.gold);
  WriteJson(o.out + ".report.json", ToJson(result));
  const MergeStats &s = result.stats;
  std::cout << "kept " << s.sentences_kept << " of " << s.tasks
            << " sentence(s): " << s.predicates_kept << " predicate(s), "
            << s.arguments_kept << " argument(s); "
            << result.adjudication.size() << " item(s) need adjudication\n";
  return 0;
}

int RunAgreement(const std::string &tasks_path,
                 const std::string &responses_path, const std::string &units,
                 int subset, const std::string &out) {
  if (units != "predicate" && units != "role") {
    throw ConfigError("--units must be 'predicate' or 'role'");
  }
  std::vector<AnnotationTask> tasks = ReadTaskFile(tasks_path);
  if (subset > 0 && static_cast<size_t>(subset) < tasks.size()) {
    tasks.resize(subset);
  }
  std::set<int> included;
  for (const AnnotationTask &task : tasks) included.insert(task.task_id);

  ReliabilityData data;
  for (const AnnotationResponse &r : ReadResponseFile(responses_path)) {
    if (!included.count(r.task_id)) continue;
    for (const MarkableResponse &m : r.markables) {
      if (m.id.is_predicate() != (units == "predicate")) continue;
      data.Set(std::to_string(r.task_id) + ":" + m.id.ToString(), r.coder_id,
               CanonicalValue(m));
    }
  }
  const double alpha = KrippendorffAlpha(data);
  json report = {{"units", units},
                 {"tasks", tasks.size()},
                 {"coders", data.coders().size()},
                 {"markables", data.units().size()},
                 {"alpha", alpha}};
  if (!out.empty()) WriteJson(out, report);
  std::printf("alpha_%s = %.4f (%zu markables, %zu coders)\n", units.c_str(),
              alpha, data.units().size(), data.coders().size());
  return 0;
}

int RunDensity(const std::string &source_path, const std::string &source_name,
               const std::vector<std::string> &corpora, int top_n,
               const std::string &out) {
  std::vector<Corpus> loaded;
  std::vector<std::string> names;
  loaded.reserve(corpora.size() + 1);
  loaded.push_back(ReadConllFile(source_path));
  names.push_back(source_name);
  for (const std::string &spec : corpora) {
    const size_t eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("--corpus expects NAME=PATH, got '" + spec + "'");
    }
    names.push_back(spec.substr(0, eq));
    loaded.push_back(ReadConllFile(spec.substr(eq + 1)));
  }
  std::vector<std::pair<std::string, const Corpus *>> named;
  for (size_t i = 0; i < loaded.size(); ++i) named.emplace_back(names[i], &loaded[i]);
  const DensityReport report = LabelDensity(named, top_n);
  WriteText(out, DensityCsv(report));
  WriteJson(out + ".json", ToJson(report));
  std::cout << DensityCsv(report);
  for (size_t i = 0; i < names.size(); ++i) {
    std::printf("coverage %s: %.1f%%\n", names[i].c_str(),
                100.0 * report.coverage[i]);
  }
  return 0;
}

AnnotationServer *g_server = nullptr;

void StopServer(int) {
  if (g_server != nullptr) g_server->Stop();
}

int RunServe(const std::string &tasks_path, const std::string &log_path,
             const std::string &coders, const std::string &host, int port,
             const std::string &static_dir) {
  std::vector<std::string> coder_ids;
  for (const std::string &c : SplitTags(coders)) coder_ids.push_back(c);
  if (coder_ids.empty()) throw ConfigError("--coders is empty");
  AnnotationStore store(ReadTaskFile(tasks_path), coder_ids, log_path);
  AnnotationServer server(&store, static_dir);
  g_server = &server;
  std::signal(SIGINT, StopServer);
  std::signal(SIGTERM, StopServer);
  std::cout << "serving " << store.num_tasks() << " task(s) for "
            << coder_ids.size() << " coder(s) on " << host << ":" << port
            << std::endl;
  const bool ok = server.Listen(host, port);
  g_server = nullptr;
  if (!ok) throw Error("cannot listen on " + host + ":" + std::to_string(port));
  return 0;
}

int Main(int argc, char **argv) {
  CLI::App app{"Cross-lingual semantic role projection and curation"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "TOML-style settings file")
      ->check(CLI::ExistingFile);

  PipelineOptions o;
  Flags flags;
  auto add_pipeline_flags = [&](CLI::App *cmd) {
    cmd->add_option("--src", o.src, "Source CoNLL-2009 corpus")->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--tgt", o.tgt, "Target CoNLL-2009 corpus")->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--src-emb", o.src_emb, "Source .embjsonl bundle")
        ->required()->check(CLI::ExistingFile);
    cmd->add_option("--tgt-emb", o.tgt_emb, "Target .embjsonl bundle")
        ->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out, "Output path")->required();
    flags.k = cmd->add_option("--k", o.k, "Top-k pieces per anchor piece")
                  ->check(CLI::PositiveNumber);
    flags.mode = cmd->add_option("--mode", o.mode, "s2t, t2s or inter");
    flags.no_filters =
        cmd->add_flag("--no-filters", o.no_filters, "Disable the verbal POS filter");
    flags.verbal_pos = cmd->add_option("--verbal-pos", o.verbal_pos,
                                       "Comma-separated verbal POS tags");
    flags.sense_policy = cmd->add_option("--sense-policy", o.sense_policy,
                                         "copy_source or target_lemma_sense");
    flags.jobs = cmd->add_option("--jobs", o.jobs, "Worker threads")
                     ->check(CLI::PositiveNumber);
  };

  CLI::App *project = app.add_subcommand("project", "Project source labels");
  add_pipeline_flags(project);
  CLI::App *align = app.add_subcommand("align", "Dump word alignment tables");
  add_pipeline_flags(align);

  CLI::App *evaluate =
      app.add_subcommand("evaluate", "Score a projection against gold");
  std::string projected_path, gold_path, eval_out;
  bool strict_sense = false;
  evaluate->add_option("--projected", projected_path)->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--gold", gold_path)->required()->check(CLI::ExistingFile);
  evaluate->add_option("--out", eval_out, "JSON report path");
  evaluate->add_flag("--strict-sense", strict_sense,
                     "Require predicate senses to match");

  CLI::App *export_tasks =
      app.add_subcommand("export-tasks", "Write annotation tasks");
  export_tasks->add_option("--src", o.src)->required()->check(CLI::ExistingFile);
  export_tasks->add_option("--tgt", o.tgt)->required()->check(CLI::ExistingFile);
  export_tasks->add_option("--out", o.out)->required();
  CLI::Option *export_pos = export_tasks->add_option("--verbal-pos", o.verbal_pos);

  CLI::App *merge = app.add_subcommand("merge", "Build the gold target corpus");
  std::string tasks_path, responses_path;
  merge->add_option("--tasks", tasks_path)->required()->check(CLI::ExistingFile);
  merge->add_option("--responses", responses_path)->required()
      ->check(CLI::ExistingFile);
  merge->add_option("--tgt", o.tgt)->required()->check(CLI::ExistingFile);
  merge->add_option("--out", o.out)->required();
  CLI::Option *merge_threshold =
      merge->add_option("--quality-threshold", o.quality_threshold,
                        "Drop sentences rated at or below this");
  CLI::Option *merge_pos = merge->add_option("--verbal-pos", o.verbal_pos);

  CLI::App *agreement =
      app.add_subcommand("agreement", "Krippendorff's alpha over responses");
  std::string units = "predicate", agreement_out;
  int subset = 0;
  agreement->add_option("--tasks", tasks_path)->required()
      ->check(CLI::ExistingFile);
  agreement->add_option("--responses", responses_path)->required()
      ->check(CLI::ExistingFile);
  agreement->add_option("--units", units, "predicate or role");
  agreement->add_option("--subset", subset, "Use only the first N tasks");
  agreement->add_option("--out", agreement_out, "JSON report path");

  CLI::App *density = app.add_subcommand("density", "Label density report");
  std::string source_path, source_name = "source", density_out;
  std::vector<std::string> corpora;
  int top_n = 10;
  density->add_option("--source", source_path)->required()
      ->check(CLI::ExistingFile);
  density->add_option("--source-name", source_name);
  density->add_option("--corpus", corpora, "NAME=PATH, repeatable");
  density->add_option("--top", top_n);
  density->add_option("--out", density_out, "CSV path")->required();

  CLI::App *serve = app.add_subcommand("serve", "Run the annotation service");
  std::string log_path, coders, host = "127.0.0.1", static_dir;
  int port = 8080;
  serve->add_option("--tasks", tasks_path)->required()->check(CLI::ExistingFile);
  serve->add_option("--log", log_path, "Append-only response log")->required();
  CLI::Option *coders_opt =
      serve->add_option("--coders", coders, "Comma-separated coder ids");
  CLI::Option *host_opt = serve->add_option("--host", host);
  CLI::Option *port_opt = serve->add_option("--port", port);
  CLI::Option *static_opt =
      serve->add_option("--static", static_dir, "Built UI directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    Config config;
    if (!config_path.empty()) config = Config::Load(config_path);
    Flags merge_flags;
    merge_flags.quality_threshold = merge_threshold;
    merge_flags.verbal_pos = merge->parsed() ? merge_pos : export_pos;
    ApplyConfig(config, project->parsed() || align->parsed() ? flags : merge_flags,
                &o);

    if (project->parsed()) return RunProject(o);
    if (align->parsed()) return RunAlign(o);
    if (evaluate->parsed()) {
      if (!strict_sense) strict_sense = config.GetBool("strict_sense").value_or(false);
      return RunEvaluate(projected_path, gold_path, eval_out, strict_sense);
    }
    if (export_tasks->parsed()) return RunExportTasks(o);
    if (merge->parsed()) return RunMerge(o, tasks_path, responses_path);
    if (agreement->parsed()) {
      return RunAgreement(tasks_path, responses_path, units, subset,
                          agreement_out);
    }
    if (density->parsed()) {
      return RunDensity(source_path, source_name, corpora, top_n, density_out);
    }
    if (serve->parsed()) {
      if (coders_opt->count() == 0) {
        if (auto list = config.GetList("serve.coders")) {
          for (const std::string &c : *list) coders += c + ",";
        }
      }
      if (host_opt->count() == 0) {
        host = config.GetString("serve.host").value_or(host);
      }
      if (port_opt->count() == 0) port = config.GetInt("serve.port").value_or(port);
      if (static_opt->count() == 0) {
        static_dir = config.GetString("serve.static").value_or(static_dir);
      }
      return RunServe(tasks_path, log_path, coders, host, port, static_dir);
    }
  } catch (const ConfigError &e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return kUsageError;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsageError;
}

}  // namespace
}  // namespace srlproj

int main(int argc, char **argv) { return srlproj::Main(argc, argv); }
