#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ttfl/elab.hpp"
#include "ttfl/levels.hpp"
#include "ttfl/surface.hpp"

namespace fs = std::filesystem;
using namespace ttfl;

namespace {

bool useColor() {
  const char* c = std::getenv("TTFL_COLOR");
  return c && std::string(c) == "1";
}

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void excerpt(std::ostream& out, const std::string& text, uint32_t offset) {
  size_t lo = text.rfind('\n', offset == 0 ? 0 : offset - 1);
  lo = (lo == std::string::npos) ? 0 : lo + 1;
  size_t hi = text.find('\n', offset);
  if (hi == std::string::npos) hi = text.size();
  if (offset < lo) lo = offset;
  out << "  | " << text.substr(lo, hi - lo) << "\n";
  out << "  | " << std::string(offset - lo, ' ') << "^\n";
}

void report(const std::string& path, const std::string& text, const char* kind,
            Span sp, const std::string& msg) {
  auto [line, col] = lineCol(text, sp.lo);
  bool color = useColor();
  std::cerr << path << ":" << line << ":" << col << ": "
            << (color ? "\x1b[31m" : "") << kind << (color ? "\x1b[0m" : "")
            << ": " << msg << "\n";
  excerpt(std::cerr, text, sp.lo);
}

// 0 ok, 1 rejected (kind reported via *kind when asked), 2 unreadable.
int elabFile(const std::string& path, StructureId levels,
             std::optional<Kernel>* out, std::string* kindOut, bool quiet) {
  auto text = slurp(path);
  if (!text) {
    if (!quiet) std::cerr << path << ": cannot read file\n";
    return 2;
  }
  Kernel kern;
  kern.structure = levels;
  try {
    Module m = parse(*text);
    Elaborator el(kern);
    el.elabModule(m);
  } catch (const ParseError& e) {
    if (kindOut) *kindOut = "PARSE";
    if (!quiet) report(path, *text, "PARSE", e.span, e.message);
    return 1;
  } catch (const ElabError& e) {
    if (kindOut) *kindOut = errKindName(e.kind);
    if (!quiet) report(path, *text, errKindName(e.kind), e.span, e.message);
    return 1;
  }
  if (out) *out = std::move(kern);
  return 0;
}

// Line-1/2 directives: "-- expect: KIND" and "-- levels: S".
struct Directives {
  std::optional<std::string> expect;
  std::optional<StructureId> levels;
};

Directives readDirectives(const std::string& text) {
  Directives d;
  std::istringstream in(text);
  std::string line;
  for (int k = 0; k < 2 && std::getline(in, line); k++) {
    auto grab = [&](const std::string& key) -> std::optional<std::string> {
      std::string pre = "-- " + key + ":";
      if (line.rfind(pre, 0) != 0) return std::nullopt;
      std::string v = line.substr(pre.size());
      size_t a = v.find_first_not_of(" \t");
      size_t b = v.find_last_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      return v.substr(a, b - a + 1);
    };
    if (auto e = grab("expect")) d.expect = *e;
    if (auto l = grab("levels")) d.levels = parseStructureId(*l);
  }
  return d;
}

int runCorpus(const std::string& dir, StructureId fallback) {
  int failures = 0, total = 0;
  auto runDir = [&](const std::string& sub, bool wantAccept) {
    fs::path p = fs::path(dir) / sub;
    if (!fs::is_directory(p)) return;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(p))
      if (e.path().extension() == ".ttfl") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      total++;
      auto text = slurp(f.string());
      Directives d = text ? readDirectives(*text) : Directives{};
      StructureId s = d.levels.value_or(fallback);
      std::string kind;
      int rc = elabFile(f.string(), s, nullptr, &kind, /*quiet=*/wantAccept ? false : true);
      bool ok;
      std::string why;
      if (wantAccept) {
        ok = rc == 0;
        if (!ok) why = "expected success, got " + (rc == 2 ? "I/O error" : kind);
      } else {
        ok = rc == 1 && d.expect && kind == *d.expect;
        if (rc != 1)
          why = "expected rejection, got " + std::string(rc == 0 ? "success" : "I/O error");
        else if (!d.expect)
          why = "missing -- expect directive";
        else if (kind != *d.expect)
          why = "expected " + *d.expect + ", got " + kind;
      }
      if (ok) {
        std::cout << "ok   " << f.string() << "\n";
      } else {
        failures++;
        std::cout << "FAIL " << f.string() << ": " << why << "\n";
      }
    }
  };
  runDir("accept", true);
  runDir("reject", false);
  std::cout << (total - failures) << "/" << total << " corpus files passed\n";
  return failures == 0 ? 0 : 1;
}

int runNf(const std::string& path, const std::string& name, StructureId levels) {
  std::optional<Kernel> kern;
  int rc = elabFile(path, levels, &kern, nullptr, false);
  if (rc) return rc;
  for (const auto& g : kern->globals) {
    if (g.name != name) continue;
    std::cout << prettyCore(quote(*kern, 0, g.value), *kern) << "\n";
    if (g.isType)
      std::cout << ": a type at level "
                << prettyCore(quoteLevel(*kern, 0, g.lvl), *kern) << "\n";
    else
      std::cout << ": " << prettyCore(quote(*kern, 0, g.type), *kern) << "\n";
    return 0;
  }
  std::cerr << path << ": no declaration named " << name << "\n";
  return 1;
}

int runDump(const std::string& path, StructureId levels) {
  std::optional<Kernel> kern;
  int rc = elabFile(path, levels, &kern, nullptr, false);
  if (rc) return rc;
  for (const auto& g : kern->globals) {
    if (g.coreType)
      std::cout << g.name << " : " << prettyCore(g.coreType, *kern) << "\n";
    else if (g.isType)
      std::cout << g.name << " : a type at level "
                << prettyCore(quoteLevel(*kern, 0, g.lvl), *kern) << "\n";
    else
      std::cout << g.name << " : " << prettyCore(quote(*kern, 0, g.type), *kern)
                << "\n";
    std::cout << g.name << " = " << prettyCore(g.coreBody, *kern) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ttfl: a kernel for type theories with first-class universe levels"};
  app.require_subcommand(1);

  std::string levelsName = "nat";
  std::vector<std::string> paths;
  std::string nfName;

  auto addLevels = [&](CLI::App* c) {
    c->add_option("--levels", levelsName,
                  "level structure: nat, omega1, omega-omega")
        ->default_val("nat");
  };

  CLI::App* check = app.add_subcommand("check", "elaborate files");
  check->add_option("files", paths, "input files")->required();
  addLevels(check);

  CLI::App* nf = app.add_subcommand("nf", "print a declaration's normal form");
  nf->add_option("file", paths, "input file")->required()->expected(1);
  nf->add_option("--name", nfName, "declaration to normalize")->required();
  addLevels(nf);

  CLI::App* dump = app.add_subcommand("dump-core", "print elaborated core terms");
  dump->add_option("file", paths, "input file")->required()->expected(1);
  addLevels(dump);

  CLI::App* corpus = app.add_subcommand("corpus", "run an accept/reject corpus");
  corpus->add_option("dir", paths, "corpus directory")->required()->expected(1);
  addLevels(corpus);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  auto s = parseStructureId(levelsName);
  if (!s) {
    std::cerr << "unknown level structure: " << levelsName << "\n";
    return 2;
  }

  if (check->parsed()) {
    for (const auto& p : paths) {
      int rc = elabFile(p, *s, nullptr, nullptr, false);
      if (rc) return rc;
    }
    return 0;
  }
  if (nf->parsed()) return runNf(paths[0], nfName, *s);
  if (dump->parsed()) return runDump(paths[0], *s);
  if (corpus->parsed()) return runCorpus(paths[0], *s);
  return 2;
}
