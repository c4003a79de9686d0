#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arsg/annotation.hpp"
#include "arsg/dkb.hpp"
#include "arsg/error.hpp"
#include "arsg/eval.hpp"
#include "arsg/grammar.hpp"
#include "arsg/learner.hpp"
#include "arsg/parser.hpp"
#include "arsg/service.hpp"
#include "arsg/summarizer.hpp"
#include "arsg/textprep.hpp"
#include "arsg/transfer.hpp"

namespace fs = std::filesystem;
using namespace arsg;

namespace {

enum Exit { kOk = 0, kUsage = 2, kData = 3, kParse = 4 };

enum class Level { Debug, Info, Warn, Error, Off };

Level log_level() {
  static const Level level = [] {
    const char* env = std::getenv("ARSG_LOG");
    const std::string v = env ? env : "warn";
    if (v == "debug") return Level::Debug;
    if (v == "info") return Level::Info;
    if (v == "error") return Level::Error;
    if (v == "off") return Level::Off;
    return Level::Warn;
  }();
  return level;
}

void log(Level level, const std::string& message) {
  static const char* names[] = {"debug", "info", "warn", "error"};
  if (level < log_level()) return;
  std::cerr << "arsg: " << names[static_cast<int>(level)] << ": " << message << '\n';
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to `path`, or to standard output when it is empty or "-".
void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
}

std::vector<fs::path> files_in(const fs::path& dir, const std::string& extension) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::Io, dir.string() + " is not a directory");
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == extension) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string percent(const Rational& r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%6.2f", 100.0 * to_double(r));
  return buf;
}

std::string prf_row(const std::string& label, const Prf& p) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-12s %s %s %s\n", label.c_str(), percent(p.precision).c_str(),
                percent(p.recall).c_str(), percent(p.f_score).c_str());
  return buf;
}

SegmentMode segment_mode(const std::string& mode, const fs::path& input) {
  if (mode == "lines" || (mode.empty() && input.extension() == ".edus")) return SegmentMode::Lines;
  if (mode == "markers") return SegmentMode::Markers;
  return SegmentMode::Punctuation;
}

// dkb validate | merge

struct DkbArgs {
  std::string file, base, additions, output;
};

void add_dkb(CLI::App& app, DkbArgs& a, std::function<int()>& run) {
  auto* dkb = app.add_subcommand("dkb", "Check or extend a domain knowledge base");
  dkb->require_subcommand(1);
  auto* validate = dkb->add_subcommand("validate", "Load a concept file and report its color counts");
  validate->add_option("file", a.file, "Concept file")->required();
  validate->callback([&] {
    run = [&] {
      auto d = load_dkb(read_file(a.file));
      const auto c = d.counts();
      std::cout << "domain  " << d.domain_name() << "\n"
                << "green   " << c.green << "\nred     " << c.red << "\nblue    " << c.blue << "\n";
      return kOk;
    };
  });
  auto* merge = dkb->add_subcommand("merge", "Merge additional concepts into a knowledge base");
  merge->add_option("base", a.base, "Concept file")->required();
  merge->add_option("additions", a.additions, "Concepts to add")->required();
  merge->add_option("-o,--output", a.output, "Merged concept file (default: stdout)");
  merge->callback([&] {
    run = [&] {
      auto base = load_dkb(read_file(a.base));
      auto added = parse_concepts(read_file(a.additions));
      auto r = extend_dkb(base, added);
      log(Level::Info, "added " + std::to_string(r.added.green) + " green, " + std::to_string(r.added.red) + " red, " +
                           std::to_string(r.added.blue) + " blue");
      write_output(a.output, serialize_dkb(r.dkb));
      return kOk;
    };
  });
}

// learn

struct LearnArgs {
  std::string logs, output, dkb;
  bool plain_rules = false;
};

void add_learn(CLI::App& app, LearnArgs& a, std::function<int()>& run) {
  auto* cmd = app.add_subcommand("learn", "Induce a grammar from annotation logs");
  cmd->add_option("logs", a.logs, "Directory of annotation logs (*.json)")->required();
  cmd->add_option("-o,--output", a.output, "Grammar file (default: stdout)");
  cmd->add_option("--dkb", a.dkb, "Restrict symbols to this knowledge base");
  cmd->add_flag("--plain-rules", a.plain_rules, "Give every production the reason True");
  cmd->callback([&] {
    run = [&] {
      std::vector<AnnotationLog> logs;
      for (const auto& f : files_in(a.logs, ".json")) {
        log(Level::Debug, "reading " + f.string());
        logs.push_back(deserialize_log(read_file(f)));
      }
      if (logs.empty()) throw Error(ErrorCode::EmptyInput, "no annotation logs in " + a.logs);
      LearnOptions options;
      if (a.plain_rules) options.instances.rule_reason_attributes.clear();
      if (!a.dkb.empty()) {
        const auto d = load_dkb(read_file(a.dkb));
        SymbolSets s = infer_symbols(logs);
        s.dre.clear();
        s.dcp.clear();
        for (const auto& c : d.concepts()) (c.color == Color::Blue ? s.dre : s.dcp).insert(c.id);
        options.symbols = s;
      }
      const Grammar g = learn(logs, options);
      log(Level::Info, std::to_string(logs.size()) + " logs, " + std::to_string(g.productions.size()) +
                           " productions, " + std::to_string(g.precedences.size()) + " precedences");
      write_output(a.output, serialize_grammar(g));
      return kOk;
    };
  });
}

// parse

struct TextArgs {
  std::string dkb, cues, overrides, segmentation;
};

void add_text_options(CLI::App* cmd, TextArgs& t) {
  cmd->add_option("--dkb", t.dkb, "Knowledge base used to find lexical cores");
  cmd->add_option("--cues", t.cues, "Cue phrase list");
  cmd->add_option("--overrides", t.overrides, "Leaf attribute overrides");
  cmd->add_option("--segmentation", t.segmentation, "punctuation, lines or markers (lines for *.edus)")
      ->check(CLI::IsMember({"punctuation", "lines", "markers"}));
}

struct Prepared {
  std::string text_id;
  std::vector<Edu> edus;
  std::vector<NodePtr> leaves;
};

Prepared prepare(const TextArgs& t, const fs::path& input) {
  if (t.dkb.empty()) throw CLI::RequiredError("--dkb");
  const auto dkb = load_dkb(read_file(t.dkb));
  const auto cues = t.cues.empty() ? CueLexicon() : CueLexicon::parse(read_file(t.cues));
  const auto overrides = t.overrides.empty() ? std::vector<LeafOverride>() : parse_overrides(read_file(t.overrides));
  SegmentationConfig seg;
  seg.mode = segment_mode(t.segmentation, input);
  auto p = prepare_text(segment(read_file(input), seg), dkb, cues, overrides);
  for (const auto& s : p.extraction.skipped) log(Level::Warn, input.string() + ": EDU " + std::to_string(s) + " has no lexical core");
  Prepared out{input.stem().string(), p.edus, {}};
  for (const auto& bt : p.trees) out.leaves.push_back(bt.node());
  return out;
}

struct ParseArgs {
  TextArgs text;
  std::string grammar, input, log_file, output, backoff = "majority";
  std::size_t max_backtracks = 10000;
  bool trace = false;
};

void add_parse(CLI::App& app, ParseArgs& a, std::function<int()>& run) {
  auto* cmd = app.add_subcommand("parse", "Parse a text into an attributed rhetorical structure tree");
  cmd->add_option("--grammar", a.grammar, "Grammar file")->required();
  add_text_options(cmd, a.text);
  auto* text = cmd->add_option("text", a.input, "Text to parse");
  auto* from_log = cmd->add_option("--log", a.log_file, "Parse the basic trees of an annotation log instead");
  text->excludes(from_log);
  cmd->add_option("-o,--output", a.output, "ARTR file (default: stdout)");
  cmd->add_option("--backoff", a.backoff, "fail, majority or shift")->check(CLI::IsMember({"fail", "majority", "shift"}));
  cmd->add_option("--max-backtracks", a.max_backtracks, "Search attempts before giving up")->check(CLI::PositiveNumber);
  cmd->add_flag("--trace", a.trace, "Stream each search step to stderr as JSON lines");
  cmd->callback([&] {
    if (a.input.empty() && a.log_file.empty()) throw CLI::ValidationError("parse", "give a text or --log");
    run = [&] {
      const Grammar g = deserialize_grammar(read_file(a.grammar));
      Prepared p;
      if (!a.log_file.empty()) {
        auto l = deserialize_log(read_file(a.log_file));
        p = {l.text_id, l.edus, l.leaves};
      } else {
        p = prepare(a.text, a.input);
      }
      ParseConfig cfg;
      cfg.backoff = *parse_backoff(a.backoff);
      cfg.max_backtracks = a.max_backtracks;
      if (a.trace) cfg.trace = [](std::string_view line) { std::cerr << line << '\n'; };
      try {
        auto r = parse(g, p.leaves, cfg);
        log(Level::Info, std::to_string(r.stats.steps) + " steps, " + std::to_string(r.stats.backtracks) + " backtracks");
        write_output(a.output, serialize_artr({p.text_id, p.edus, r.root}));
        return kOk;
      } catch (const ParseFailure& f) {
        log(Level::Error, std::string(f.what()) + " (forest of " + std::to_string(f.forest().size()) + " trees)");
        return kParse;
      }
    };
  });
}

// summarize

struct SummarizeArgs {
  std::string artr, ratio;
  std::int64_t count = 0;
  bool text_order = false;
};

void add_summarize(CLI::App& app, SummarizeArgs& a, std::function<int()>& run) {
  auto* cmd = app.add_subcommand("summarize", "Extract the most significant EDUs of a tree");
  cmd->add_option("--artr", a.artr, "ARTR file")->required();
  auto* count = cmd->add_option("--edus", a.count, "Number of EDUs to keep");
  auto* ratio = cmd->add_option("--ratio", a.ratio, "Fraction of EDUs to keep, as 0.25 or 1/4");
  count->excludes(ratio);
  cmd->add_flag("--text-order", a.text_order, "Print the selection in text order");
  cmd->callback([&, count, ratio] {
    if (!*count && !*ratio) throw CLI::ValidationError("summarize", "give --edus or --ratio");
    run = [&, count, ratio] {
      SummaryRequest q;
      if (*count) q.count = a.count;
      if (*ratio) q.ratio = parse_rational(a.ratio);
      q.restore_text_order = a.text_order;
      auto r = summarize(deserialize_artr(read_file(a.artr)), q);
      for (const auto& item : r.items) std::cout << item.edu_id << '\t' << item.rank << '\t' << item.text << '\n';
      log(Level::Info, "halted by " + std::string(to_string(r.halted_by)) + " after " + std::to_string(r.visits) + " visits");
      return kOk;
    };
  });
}

// eval trees | rouge

struct EvalArgs {
  std::string pred, gold, candidate, reference, stopwords, granularity = "discourse";
  bool s4 = false;
};

void add_eval(CLI::App& app, EvalArgs& a, std::function<int()>& run) {
  auto* eval = app.add_subcommand("eval", "Score trees or summaries");
  eval->require_subcommand(1);
  auto* trees = eval->add_subcommand("trees", "Constituent precision, recall and F per level, summed over a corpus");
  trees->add_option("pred", a.pred, "Directory of predicted ARTR files")->required();
  trees->add_option("gold", a.gold, "Directory of gold ARTR files with the same names")->required();
  trees->add_option("--granularity", a.granularity, "discourse, sentence or paragraph")
      ->check(CLI::IsMember({"discourse", "sentence", "paragraph"}));
  trees->callback([&] {
    run = [&] {
      const auto gran = a.granularity == "sentence"    ? Granularity::Sentence
                        : a.granularity == "paragraph" ? Granularity::Paragraph
                                                       : Granularity::Discourse;
      TreeCounts total;
      std::size_t n = 0;
      for (const auto& g : files_in(a.gold, ".json")) {
        const fs::path p = fs::path(a.pred) / g.filename();
        if (!fs::exists(p)) {
          log(Level::Warn, "no prediction for " + g.filename().string());
          continue;
        }
        const auto gold = deserialize_artr(read_file(g));
        total += tree_counts(*deserialize_artr(read_file(p)).root, *gold.root, gran, gold.edus);
        ++n;
      }
      if (n == 0) throw Error(ErrorCode::EmptyInput, "no tree pairs to compare");
      const auto s = score(total);
      std::cout << "trees " << n << ", " << to_string(gran) << " level\n";
      std::cout << "level          P(%)   R(%)   F(%)\n";
      for (auto level : kTreeLevels) std::cout << prf_row(std::string(to_string(level)), s.at(level));
      return kOk;
    };
  });
  auto* rouge = eval->add_subcommand("rouge", "ROUGE-2, or ROUGE-S4 with --s4, of a candidate against a reference");
  rouge->add_option("candidate", a.candidate, "Candidate summary")->required();
  rouge->add_option("reference", a.reference, "Reference summary")->required();
  rouge->add_option("--stopwords", a.stopwords, "Stop word list");
  rouge->add_flag("--s4", a.s4, "Skip bigrams with gap up to 4");
  rouge->callback([&] {
    run = [&] {
      const StopSet stop = a.stopwords.empty() ? StopSet() : parse_stopwords(read_file(a.stopwords));
      const auto c = tokenize(read_file(a.candidate));
      const auto r = tokenize(read_file(a.reference));
      const auto p = a.s4 ? rougeS4(c, r, stop) : rouge2(c, r, stop);
      std::cout << "metric         P(%)   R(%)   F(%)\n" << prf_row(a.s4 ? "ROUGE-S4" : "ROUGE-2", p);
      return kOk;
    };
  });
}

// transfer

struct TransferArgs {
  std::string grammar, map, dkb_ext, dkb, output;
};

void add_transfer(CLI::App& app, TransferArgs& a, std::function<int()>& run) {
  auto* cmd = app.add_subcommand("transfer", "Rewrite a grammar for a sibling domain");
  cmd->add_option("--grammar", a.grammar, "Source grammar")->required();
  cmd->add_option("--map", a.map, "Concept mapping file")->required();
  cmd->add_option("--dkb-ext", a.dkb_ext, "Concepts of the target domain")->required();
  cmd->add_option("--dkb", a.dkb, "Source knowledge base the extension is merged into");
  cmd->add_option("-o,--output", a.output, "Transferred grammar (default: stdout)");
  cmd->callback([&] {
    run = [&] {
      const Grammar g = deserialize_grammar(read_file(a.grammar));
      const auto mapping = parse_mapping(read_file(a.map));
      DomainKnowledgeBase ext;
      if (a.dkb.empty()) {
        ext = load_dkb(read_file(a.dkb_ext));
      } else {
        ext = extend_dkb(load_dkb(read_file(a.dkb)), parse_concepts(read_file(a.dkb_ext))).dkb;
      }
      const auto r = transfer_grammar(g, mapping, ext);
      write_output(a.output, serialize_grammar(r.grammar));
      std::cerr << "changed    productions " << r.report.changed_productions << "  attributes "
                << r.report.changed_attributes << "  precedences " << r.report.changed_precedences << '\n';
      return kOk;
    };
  });
}

// serve

struct ServeArgs {
  std::string dkb, cues, grammar, host = "127.0.0.1", data_dir, static_dir;
  int port = 8080;
};

void add_serve(CLI::App& app, ServeArgs& a, std::function<int()>& run) {
  auto* cmd = app.add_subcommand("serve", "Host the annotation session API");
  cmd->add_option("--dkb", a.dkb, "Knowledge base")->required();
  cmd->add_option("--cues", a.cues, "Cue phrase list");
  cmd->add_option("--grammar", a.grammar, "Grammar used for hints and the relation list");
  cmd->add_option("--host", a.host, "Address to bind");
  cmd->add_option("--port", a.port, "Port to bind")->check(CLI::Range(0, 65535));
  cmd->add_option("--data-dir", a.data_dir, "Session journals and finalized logs");
  cmd->add_option("--static", a.static_dir, "UI bundle served at /");
  cmd->footer("The bearer token, if any, is read from ARSG_TOKEN.");
  cmd->callback([&] {
    run = [&] {
      ServiceConfig c;
      c.dkb = std::make_shared<DomainKnowledgeBase>(load_dkb(read_file(a.dkb)));
      if (!a.cues.empty()) c.cues = CueLexicon::parse(read_file(a.cues));
      if (!a.grammar.empty()) c.grammar = std::make_shared<Grammar>(deserialize_grammar(read_file(a.grammar)));
      if (const char* token = std::getenv("ARSG_TOKEN"); token && *token) c.token = token;
      if (!a.data_dir.empty()) c.data_dir = a.data_dir;
      if (!a.static_dir.empty()) c.static_dir = a.static_dir;
      AnnotationService service(c);
      if (const auto n = service.recover()) log(Level::Info, "recovered " + std::to_string(n) + " sessions");
      HttpServer server(service);
      const int port = server.bind(a.host, a.port);
      log(Level::Info, "listening on " + a.host + ":" + std::to_string(port));
      server.run();
      return kOk;
    };
  });
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ParseFailure:
    case ErrorCode::NoAction:
    case ErrorCode::NoApplicableRule: return kParse;
    default: return kData;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("Attributed rhetorical structure grammar toolkit", "arsg");
  app.require_subcommand(1);
  app.set_version_flag("--version", "arsg 0.1.0");

  std::function<int()> run;
  DkbArgs dkb;
  LearnArgs learn_args;
  ParseArgs parse_args;
  SummarizeArgs summarize_args;
  EvalArgs eval_args;
  TransferArgs transfer_args;
  ServeArgs serve_args;
  add_dkb(app, dkb, run);
  add_learn(app, learn_args, run);
  add_parse(app, parse_args, run);
  add_summarize(app, summarize_args, run);
  add_eval(app, eval_args, run);
  add_transfer(app, transfer_args, run);
  add_serve(app, serve_args, run);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return run ? run() : kUsage;
  } catch (const CLI::Error& e) {
    std::cerr << "arsg: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    log(Level::Error, std::string(to_string(e.code())) + ": " + e.what());
    return exit_for(e);
  } catch (const std::exception& e) {
    log(Level::Error, e.what());
    return kData;
  }
}
