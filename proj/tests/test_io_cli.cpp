#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "arrowkit/cli.hpp"
#include "arrowkit/error.hpp"
#include "arrowkit/format.hpp"
#include "arrowkit/io.hpp"

using namespace arrowkit;

namespace {

const AlternativeSet abc = AlternativeSet::standard(3);

Swf read(const std::string& text) {
  std::istringstream in(text);
  return read_swf(in);
}

std::string write(const Swf& s) {
  std::ostringstream out;
  write_swf(out, s);
  return out.str();
}

// Line and column of the ParseError raised by reading `text`.
std::pair<std::size_t, std::size_t> error_at(const std::string& text) {
  try {
    read(text);
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  return {0, 0};
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("arrowkit_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++))) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }

  std::string file(const std::string& name, const std::string& content) const {
    const auto p = path_ / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string save(const std::string& name, const Swf& s) const {
    const auto p = (path_ / name).string();
    save_swf(p, s);
    return p;
  }
  std::filesystem::path path() const { return path_; }

 private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("round trips") {
    for (const auto& d : {share(Domain::full_weak(abc, 2)), share(Domain::full_linear(abc, 3))})
      for (const Swf& s : {dictatorship(0, d), borda(d), pairwise_majority(d)}) {
        const Swf back = read(write(s));
        CHECK(back == s);
        CHECK(write(back) == write(s));
      }
  }

  TEST_CASE("explicit profile lists") {
    const std::string text =
        "# two profiles\n"
        "alternatives: a b c\n"
        "voters: 2\n"
        "\n"
        "a>b>c ; c>b>a -> a>b~c   # comment\n"
        "b>a>c ; c>b>a -> b>a>c\n";
    const Swf s = read(text);
    CHECK(s.domain().kind() == DomainKind::explicit_set);
    CHECK(s.domain().size() == 2);
    CHECK(format_chain(s(parse_profile(abc, "a>b>c ; c>b>a"))) == "a>b~c");
    CHECK(read(write(s)) == s);
  }

  TEST_CASE("a complete list becomes a full domain") {
    const Swf d = dictatorship(0, share(Domain::full_linear(abc, 1)));
    std::string text = "alternatives: a b c\nvoters: 1\n";
    for (std::size_t k = 0; k < d.domain().size(); ++k)
      text += format_profile(d.domain().profile(k)) + " -> " + format_chain(d.output(k)) + "\n";
    CHECK(read(text).domain().kind() == DomainKind::full_linear);
  }

  TEST_CASE("domains") {
    std::istringstream full("alternatives: x y z\nvoters: 2\ndomain: full-weak\n");
    const DomainPtr d = read_domain(full);
    CHECK(d->size() == 169);
    CHECK(d->carrier().to_string() == "{x,y,z}");
    std::istringstream list("alternatives: a b\nvoters: 1\na>b\nb>a\n");
    const DomainPtr l = read_domain(list);
    CHECK(l->kind() == DomainKind::full_linear);
    std::ostringstream out;
    write_domain(out, *d);
    CHECK(out.str() == "alternatives: x y z\nvoters: 2\ndomain: full-weak\n");
  }

  TEST_CASE("errors carry line and column") {
    const std::string head = "alternatives: a b c\nvoters: 1\n";
    CHECK(error_at(head + "a>b>c -> a>b>d\n") == std::pair<std::size_t, std::size_t>{3, 14});
    CHECK(error_at(head + "a>b>c -> a>b>c\na>b>c -> a>b>c\n").first == 4);
    CHECK(error_at(head + "a>b>c a>b>c\n").first == 3);
    CHECK(error_at(head + "a>b>c ; a>b>c -> a>b>c\n").first == 3);
    CHECK(error_at("alternatives: a b c\nvoters: two\n") == std::pair<std::size_t, std::size_t>{2, 9});
    CHECK(error_at("alternatives: a b c\ncolour: red\n").first == 2);
    CHECK(error_at("voters: 1\na>b -> a>b\n").first == 2);
    CHECK(error_at(head + "domain: full-linear\na>b>c -> a>b>c\n") == std::pair<std::size_t, std::size_t>{3, 1});
    CHECK(error_at(head).first != 0);
    CHECK_THROWS_AS(load_swf("/nonexistent/file.swf"), Error);
  }

  TEST_CASE("duplicate profiles name the first occurrence") {
    try {
      read("alternatives: a b\nvoters: 1\na>b -> a>b\nb>a -> b>a\na>b -> b>a\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 5);
      CHECK(e.message().find("line 3") != std::string::npos);
    }
  }

  TEST_CASE("cyclic outputs load as arbitrary relations") {
    const Swf s = read("alternatives: a b c\nvoters: 1\ndomain: full-linear\n" + [] {
      std::string body;
      for (const auto& r : enumerate_linear_orders(abc)) body += format_chain(r) + " -> {(a,b),(b,c),(c,a)}\n";
      return body;
    }());
    CHECK_FALSE(s.well_formed());
  }
}

TEST_SUITE("cli") {
  TEST_CASE("enumerate") {
    CHECK(invoke({"enumerate", "--n", "3", "--kind", "weak"}).out == "13\n");
    CHECK(invoke({"enumerate", "--n", "4"}).out == "75\n");
    CHECK(invoke({"enumerate", "--n", "5", "--kind", "linear"}).out == "120\n");
    const Run list = invoke({"enumerate", "--n", "2", "--kind", "weak", "--list"});
    CHECK(list.out == "3\nb>a\na>b\na~b\n");
    CHECK(invoke({"enumerate", "--n", "5", "--kind", "weak"}).code == cli::kUsageOrInput);
  }

  TEST_CASE("usage errors") {
    CHECK(invoke({}).code == cli::kUsageOrInput);
    CHECK(invoke({"frobnicate"}).code == cli::kUsageOrInput);
    CHECK(invoke({"enumerate", "--n", "3", "--kind", "partial"}).code == cli::kUsageOrInput);
    CHECK(invoke({"--help"}).code == cli::kOk);
    CHECK(invoke({"check", "--swf", "/nonexistent.swf"}).code == cli::kUsageOrInput);
  }

  TEST_CASE("check") {
    TempDir dir;
    const DomainPtr linear = share(Domain::full_linear(abc, 2));
    const DomainPtr weak = share(Domain::full_weak(abc, 2));
    const Run d0 = invoke({"check", "--swf", dir.save("d0.swf", dictatorship(0, weak))});
    CHECK(d0.code == cli::kOk);
    CHECK(d0.out == "UD: ok\nIIA: ok  P: ok  WP: ok  D: dictator=0\n");
    const Run lin = invoke({"check", "--swf", dir.save("d1.swf", dictatorship(1, linear))});
    CHECK(lin.out == "UD: ok (linear ballots)\nIIA: ok  P: ok  WP: ok  D: dictator=1\n");
    const Run b = invoke({"check", "--swf", dir.save("borda.swf", borda(linear))});
    CHECK(b.code == cli::kCheckFailed);
    CHECK(b.out.find("IIA: FAIL") != std::string::npos);
    CHECK(b.out.find("IIA witness: pair=(a,b) p=") != std::string::npos);
    const Run bad = invoke({"check", "--swf", dir.file("bad.swf", "alternatives: a b\nvoters: 1\na>c -> a>b\n")});
    CHECK(bad.code == cli::kUsageOrInput);
    CHECK(bad.err.find("bad.swf:3:3:") != std::string::npos);
  }

  TEST_CASE("decisive") {
    TempDir dir;
    const Run r = invoke({"decisive", "--swf", dir.save("d0.swf", dictatorship(0, share(Domain::full_linear(abc, 2))))});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("decisive family: {{0},{0,1}}\n") != std::string::npos);
    CHECK(r.out.find("generator: 0\n") != std::string::npos);
    const Run m = invoke({"decisive", "--swf", dir.save("maj.swf", pairwise_majority(share(Domain::full_linear(abc, 3))))});
    CHECK(m.code == cli::kCheckFailed);
    CHECK(m.out.find("F6: FAIL witness={0,1}&{0,2}\n") != std::string::npos);
  }

  TEST_CASE("factorize") {
    TempDir dir;
    const Run r = invoke({"factorize", "--swf", dir.save("d1.swf", dictatorship(1, share(Domain::full_linear(abc, 3))))});
    CHECK(r.code == cli::kOk);
    CHECK(r.out == "h: cc\nhomomorphism: yes\nprojection: 1\nsquare: OK\n");
    const Run b = invoke({"factorize", "--swf", dir.save("b.swf", borda(share(Domain::full_linear(abc, 2))))});
    CHECK(b.code == cli::kHypothesesNotMet);
    CHECK(b.out == "hypotheses not met: IIA\n");
  }

  TEST_CASE("naturality") {
    TempDir dir;
    const DomainPtr linear = share(Domain::full_linear(abc, 2));
    const Run ok = invoke({"naturality", "--swf", dir.save("d0.swf", dictatorship(0, linear)), "--injections"});
    CHECK(ok.code == cli::kOk);
    CHECK(ok.out == "extension: ok\ninclusions: ok\ninjections: ok\n");
    const Run b = invoke({"naturality", "--swf", dir.save("b.swf", borda(linear))});
    CHECK(b.code == cli::kCheckFailed);
    CHECK(b.out.rfind("extension: FAIL", 0) == 0);
    const std::size_t split[] = {0, 1, 1};
    const Run swap = invoke({"naturality", "--swf", dir.save("pd.swf", pairwise_dictators(linear, split)), "--injections"});
    CHECK(swap.code == cli::kCheckFailed);
    CHECK(swap.out.find(" alpha=[") != std::string::npos);
    CHECK(swap.out.find("injections: FAIL\n") != std::string::npos);
  }

  TEST_CASE("verify-arrow") {
    const Run r = invoke({"verify-arrow", "--alternatives", "3", "--voters", "2"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.rfind("candidates=4096 valid=2 dictators=[0,1]\n", 0) == 0);
    CHECK(r.err.rfind("elapsed: ", 0) == 0);
    CHECK(invoke({"verify-arrow", "--alternatives", "4"}).code == cli::kUsageOrInput);

    TempDir dir;
    const auto emit = (dir.path() / "out").string();
    CHECK(invoke({"verify-arrow", "--voters", "3", "--emit-survivors", emit}).code == cli::kOk);
    for (std::size_t i = 0; i < 3; ++i) {
      const Swf s = load_swf(emit + "/survivor_" + std::to_string(i) + ".swf");
      CHECK(find_dictator(s) == i);
    }
  }

  TEST_CASE("nat-trans") {
    const Run r = invoke({"nat-trans", "--arity", "2", "--max-size", "2"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.rfind("candidates=16 survivors=2\n", 0) == 0);
  }
}
