#include <sstream>

#include <gtest/gtest.h>

#include "corpus_scope/csv.hpp"
#include "corpus_scope/error.hpp"
#include "corpus_scope/ingest.hpp"
#include "support/generators.hpp"

using namespace corpus_scope;
using ingest::Format;

namespace {

Document doc(std::string id, std::string title, std::string abstract = "",
             std::vector<std::string> keywords = {}, std::vector<std::string> countries = {}) {
  Document d;
  d.id = std::move(id);
  d.title = std::move(title);
  d.abstract = std::move(abstract);
  d.keywords = std::move(keywords);
  d.countries = std::move(countries);
  d.year = 2020;
  return d;
}

const char* kHeader = "id,title,abstract,keywords,year,doc_type,countries\n";

}  // namespace

TEST(Csv, QuotedFieldsAndLineEndings) {
  const auto records = csv::parse("a,\"b,c\",\"say \"\"hi\"\"\"\r\n\r\nx,\"multi\nline\",z\n");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].fields, (std::vector<std::string>{"a", "b,c", "say \"hi\""}));
  EXPECT_EQ(records[1].fields, (std::vector<std::string>{"x", "multi\nline", "z"}));
}

TEST(Csv, UnterminatedQuoteIsFlagged) {
  const auto records = csv::parse("a,\"open\n");
  ASSERT_EQ(records.size(), 1u);
  EXPECT_TRUE(records[0].unterminated_quote);
}

TEST(Csv, EscapeRoundTrips) {
  std::string line;
  csv::append_row(line, {"plain", "with,comma", "with \"quote\"", ""});
  const auto records = csv::parse(line);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].fields,
            (std::vector<std::string>{"plain", "with,comma", "with \"quote\"", ""}));
}

TEST(ParseRecords, ThreeValidRows) {
  const std::string input = std::string(kHeader) +
                            "a1,First,Abs,k1; k2,2019,Article,Saudi Arabia\n"
                            "a2,Second,,,2020,Conference Paper,\n"
                            "a3,Third,Abs,,2021,Book,China; India\n";
  const auto result = ingest::parse_records(input, Format::CSV);
  EXPECT_EQ(result.corpus.size(), 3u);
  EXPECT_TRUE(result.errors.empty());
  const auto& d = result.corpus.documents()[0];
  EXPECT_EQ(d.keywords, (std::vector<std::string>{"k1", "k2"}));
  EXPECT_EQ(d.doc_type, DocType::ResearchArticle);
  EXPECT_EQ(result.corpus.documents()[1].doc_type, DocType::ConferenceProceeding);
  EXPECT_EQ(result.corpus.documents()[2].countries, (std::vector<std::string>{"China", "India"}));
}

TEST(ParseRecords, UnparseableYearBecomesRecordError) {
  const std::string input = std::string(kHeader) +
                            "a1,First,,,2019,Article,\n"
                            "a2,Second,,,2020,Article,\n"
                            "a3,Third,,,n/a,Article,\n";
  const auto result = ingest::parse_records(input, Format::CSV);
  EXPECT_EQ(result.corpus.size(), 2u);
  ASSERT_EQ(result.errors.size(), 1u);
  EXPECT_EQ(result.errors[0], (ingest::RecordError{3, "unparseable year"}));
}

TEST(ParseRecords, HeaderOnlyGivesEmptyCorpus) {
  const auto result = ingest::parse_records(kHeader, Format::CSV);
  EXPECT_TRUE(result.corpus.empty());
  EXPECT_TRUE(result.errors.empty());
}

TEST(ParseRecords, MissingRequiredColumnIsSchemaError) {
  EXPECT_THROW(ingest::parse_records("id,title,abstract\na,b,c\n", Format::CSV), SchemaError);
}

TEST(ParseRecords, MissingYearIsFlaggedNotDropped) {
  const std::string input = std::string(kHeader) + "a1,First,,,,Article,\n";
  const auto result = ingest::parse_records(input, Format::CSV);
  ASSERT_EQ(result.corpus.size(), 1u);
  EXPECT_FALSE(result.corpus.documents()[0].year.has_value());
  EXPECT_EQ(result.corpus.missing_year_ids(), (std::vector<std::string>{"a1"}));
}

TEST(ParseRecords, RowLevelErrorsDoNotAbort) {
  const std::string input = std::string(kHeader) +
                            "a1,First,,,1850,Article,\n"
                            ",No id,,,2019,Article,\n"
                            "a2,Ok,,,2019,Article,\n"
                            "a2,Duplicate,,,2019,Article,\n"
                            "a3,Too,few\n";
  const auto result = ingest::parse_records(input, Format::CSV);
  EXPECT_EQ(result.corpus.size(), 1u);
  ASSERT_EQ(result.errors.size(), 4u);
  EXPECT_EQ(result.errors[0].row, 1u);
  EXPECT_EQ(result.errors[0].reason, "year out of range");
  EXPECT_EQ(result.errors[1].reason, "missing id");
  EXPECT_EQ(result.errors[2].row, 4u);
  EXPECT_EQ(result.corpus.documents()[0].title, "Ok");
}

TEST(ParseRecords, InvalidUtf8IsRejected) {
  const std::string input = std::string(kHeader) + "a1,Bad \xff title,,,2019,Article,\n";
  const auto result = ingest::parse_records(input, Format::CSV);
  EXPECT_TRUE(result.corpus.empty());
  ASSERT_EQ(result.errors.size(), 1u);
}

TEST(ParseRecords, JsonLines) {
  const std::string input =
      "{\"id\":\"j1\",\"title\":\"T\",\"keywords\":[\"a\",\"b\"],\"year\":2019,"
      "\"doc_type\":\"Article\",\"countries\":\"Saudi Arabia; Egypt\"}\n"
      "\n"
      "{\"id\":\"j2\",\"title\":\"U\",\"year\":\"2020\"}\n"
      "not json\n";
  const auto result = ingest::parse_records(input, Format::JSONLines);
  ASSERT_EQ(result.corpus.size(), 2u);
  EXPECT_EQ(result.corpus.documents()[0].keywords, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(result.corpus.documents()[0].countries,
            (std::vector<std::string>{"Saudi Arabia", "Egypt"}));
  EXPECT_EQ(result.corpus.documents()[1].year, 2020);
  ASSERT_EQ(result.errors.size(), 1u);
  EXPECT_EQ(result.errors[0].row, 4u);
}

TEST(ParseRecords, UnreadableFileIsIOError) {
  EXPECT_THROW(ingest::load_records("/nonexistent/records.csv", Format::CSV), IOError);
}

TEST(ParseRecords, CorpusIsSortedById) {
  const std::string input = std::string(kHeader) + "b,B,,,2019,,\na,A,,,2019,,\nc,C,,,2019,,\n";
  const auto result = ingest::parse_records(input, Format::CSV);
  std::vector<std::string> ids;
  for (const auto& d : result.corpus.documents()) ids.push_back(d.id);
  EXPECT_EQ(ids, (std::vector<std::string>{"a", "b", "c"}));
}

TEST(DocTypes, NormalizedLookup) {
  EXPECT_EQ(parse_doc_type("conference proceeding"), DocType::ConferenceProceeding);
  EXPECT_EQ(parse_doc_type("RESEARCH_ARTICLE"), DocType::ResearchArticle);
  EXPECT_EQ(parse_doc_type("Book Chapter"), DocType::BookChapter);
  EXPECT_EQ(parse_doc_type("Conference Review"), DocType::ConferenceReview);
  EXPECT_EQ(parse_doc_type("Book"), DocType::Book);
  EXPECT_EQ(parse_doc_type("editorial"), DocType::Editorial);
  EXPECT_EQ(parse_doc_type("Erratum"), DocType::Other);
  for (DocType t : kAllDocTypes) EXPECT_EQ(parse_doc_type(to_string(t)), t);
}

TEST(FilterByPhrase, CaseInsensitiveTitleMatch) {
  const Corpus c({doc("a", "A Data Science Primer")}, "test");
  EXPECT_EQ(ingest::filter_by_phrase(c, "data science").size(), 1u);
}

TEST(FilterByPhrase, ContiguityRequired) {
  const Corpus c({doc("a", "Untitled", "science of data")}, "test");
  EXPECT_EQ(ingest::filter_by_phrase(c, "data science").size(), 0u);
}

TEST(FilterByPhrase, KeywordOnlyMatch) {
  const Corpus c({doc("a", "Untitled", "", {"Data Science"})}, "test");
  EXPECT_EQ(ingest::filter_by_phrase(c, "data science").size(), 1u);
}

TEST(FilterByPhrase, NoSubstringMatches) {
  const Corpus c({doc("a", "Database sciences today")}, "test");
  EXPECT_EQ(ingest::filter_by_phrase(c, "data science").size(), 0u);
}

TEST(FilterByPhrase, KeywordsDoNotRunTogether) {
  const Corpus c({doc("a", "Untitled", "", {"big data", "science"})}, "test");
  EXPECT_EQ(ingest::filter_by_phrase(c, "data science").size(), 0u);
}

TEST(FilterByPhrase, ProvenanceRecordsFilter) {
  const Corpus c({doc("a", "data science")}, "csv:x");
  EXPECT_NE(ingest::filter_by_phrase(c, "data science").provenance().find("data science"),
            std::string::npos);
}

TEST(FilterByPhrase, EmptyPhraseRejected) {
  const Corpus c({doc("a", "x")}, "test");
  EXPECT_THROW(ingest::filter_by_phrase(c, "  "), ConfigError);
}

TEST(PartitionByCountry, SplitsByMembership) {
  const Corpus c({doc("a", "t", "", {}, {"Saudi Arabia"}), doc("b", "t", "", {}, {"China"}),
                  doc("c", "t", "", {}, {"Egypt", "Saudi Arabia"}), doc("d", "t"),
                  doc("e", "t", "", {}, {"India"})},
                 "test");
  const auto [in, out] = ingest::partition_by_country(c, "Saudi Arabia");
  EXPECT_EQ(in.size(), 2u);
  EXPECT_EQ(out.size(), 3u);
}

TEST(PartitionByCountry, CaseInsensitive) {
  const Corpus c({doc("a", "t", "", {}, {"Saudi Arabia"})}, "test");
  EXPECT_EQ(ingest::partition_by_country(c, "saudi arabia").first.size(), 1u);
}

TEST(PartitionByCountry, NoAffiliations) {
  const Corpus c({doc("a", "t"), doc("b", "t")}, "test");
  const auto [in, out] = ingest::partition_by_country(c, "Saudi Arabia");
  EXPECT_TRUE(in.empty());
  EXPECT_EQ(out.size(), 2u);
}

TEST(FilterByYears, KeepsInclusiveRange) {
  Document a = doc("a", "t");
  a.year = 2009;
  Document b = doc("b", "t");
  b.year = 2022;
  Document c = doc("c", "t");
  c.year.reset();
  const Corpus corpus({a, b, c}, "test");
  EXPECT_EQ(ingest::filter_by_years(corpus, 2009, 2021).size(), 1u);
  EXPECT_EQ(ingest::filter_by_years(corpus, 2009, 2022).size(), 2u);
}

// Property: serializing to CSV and parsing back reproduces every document.
TEST(IngestProperties, CsvRoundTrip) {
  gen::Gen g(101);
  const auto words = gen::alphabet(12);
  for (int trial = 0; trial < 50; ++trial) {
    auto docs = gen::documents(g, static_cast<std::size_t>(g.integer(0, 25)), words);
    if (trial % 5 == 0 && !docs.empty()) docs[0].title = "Quotes \"and\", commas\nand lines";
    const Corpus corpus(docs, "generated");
    const auto parsed = ingest::parse_records(ingest::to_csv(corpus), Format::CSV);
    EXPECT_TRUE(parsed.errors.empty());
    EXPECT_EQ(parsed.corpus.documents(), corpus.documents()) << "trial " << trial;
  }
}

TEST(IngestProperties, PhraseFilterIdempotent) {
  gen::Gen g(202);
  const auto words = gen::alphabet(6);
  for (int trial = 0; trial < 50; ++trial) {
    const Corpus corpus(gen::documents(g, 30, words), "generated");
    const std::string phrase = g.pick(words) + " " + g.pick(words);
    const auto once = ingest::filter_by_phrase(corpus, phrase);
    const auto twice = ingest::filter_by_phrase(once, phrase);
    EXPECT_EQ(once.documents(), twice.documents());
  }
}

TEST(IngestProperties, PartitionIsDisjointAndComplete) {
  gen::Gen g(303);
  const auto words = gen::alphabet(6);
  for (int trial = 0; trial < 50; ++trial) {
    const Corpus corpus(gen::documents(g, static_cast<std::size_t>(g.integer(0, 40)), words),
                        "generated");
    const auto [in, out] = ingest::partition_by_country(corpus, "saudi arabia");
    EXPECT_EQ(in.size() + out.size(), corpus.size());
    for (const auto& d : in.documents()) EXPECT_EQ(out.find(d.id), nullptr);
  }
}
