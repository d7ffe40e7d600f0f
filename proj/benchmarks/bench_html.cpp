#include <benchmark/benchmark.h>

#include <string>

#include "factcheck/ingest/html.hpp"
#include "factcheck/ingest/selector.hpp"

using namespace factcheck::ingest;

namespace {

std::string article_page(std::size_t paragraphs) {
  std::string html =
      "<!doctype html><html><head><title>t</title><script>var a = '<p>';</script></head><body>"
      "<nav><a href=/>Home</a><a href=/about>About</a></nav><article>"
      "<h1 class=headline>Viral claim about towers &amp; health</h1>"
      "<span class=rating>Pants on Fire!</span><time datetime=2020-04-03>April 3</time>"
      "<div class=article-body>";
  for (std::size_t i = 0; i < paragraphs; ++i) {
    html += "<p>Paragraph " + std::to_string(i) + " with <a href='/x" + std::to_string(i) +
            "'>a link</a> and <b>emphasis</b>, plus an entity &eacute;.";
  }
  return html + "</div><span class=tag>Health</span></article></body></html>";
}

}  // namespace

static void BM_HtmlParse(benchmark::State& state) {
  const auto page = article_page(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(html::Document::parse(page));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * page.size()));
}
BENCHMARK(BM_HtmlParse)->Arg(10)->Arg(200);

static void BM_SelectBody(benchmark::State& state) {
  const auto doc = html::Document::parse(article_page(200));
  const auto path = SelectorPath::parse("div.article-body p, div.article-body");
  for (auto _ : state) benchmark::DoNotOptimize(path.select(doc));
}
BENCHMARK(BM_SelectBody);
