from __future__ import annotations

import csv
import json
import signal
import socket
import subprocess
import time

import httpx
import pytest

from vardle import analytics, cli
from vardle.wordlists import write_word_list

from conftest import make_sessions
from dotcheck import parse_dot
from server_util import free_port, serve_command, wait_for_server


def write_inputs(tmp_path, planted):
    lexicon_path = tmp_path / "lexicon.txt"
    lexicon_path.write_text(
        "".join(word + "\n" for word in sorted(planted.lexicon)), encoding="utf-8"
    )
    inflections_path = tmp_path / "inflections.tsv"
    inflections_path.write_text(
        "puķe\tpuķei\npuķe\tpuķēm\nlaiks\tlaiku\nbad-row\n", encoding="utf-8"
    )
    return lexicon_path, inflections_path


def build_args(tmp_path, planted, out_name="out", k_main=10, k_secondary=100):
    lexicon_path, inflections_path = write_inputs(tmp_path, planted)
    return [
        "build-lists",
        "--corpus-dir", str(planted.path.parent),
        "--lexicon", str(lexicon_path),
        "--inflections", str(inflections_path),
        "--out-dir", str(tmp_path / out_name),
        "--k-main", str(k_main),
        "--k-secondary", str(k_secondary),
    ]


class TestBuildLists:
    def test_writes_all_outputs_with_k_main_lines(self, tmp_path, planted_corpus):
        code = cli.main(build_args(tmp_path, planted_corpus))
        assert code == 0
        out = tmp_path / "out"
        main_words = (out / "main.txt").read_text(encoding="utf-8").splitlines()
        assert main_words == planted_corpus.ranked_lexicon_approved()[:10]
        for name in ["secondary.txt", "review_report.txt", "length_distribution.csv", "build_meta.json"]:
            assert (out / name).exists()
        review = (out / "review_report.txt").read_text(encoding="utf-8")
        assert review.startswith("CHINA\t")
        secondary = set((out / "secondary.txt").read_text(encoding="utf-8").splitlines())
        assert "PUĶEI" in secondary  # merged inflection
        assert not secondary & set(main_words)

    def test_missing_corpus_dir_exit_2(self, tmp_path, planted_corpus):
        args = build_args(tmp_path, planted_corpus)
        args[args.index("--corpus-dir") + 1] = str(tmp_path / "nope")
        assert cli.main(args) == 2

    def test_missing_lexicon_exit_2(self, tmp_path, planted_corpus):
        args = build_args(tmp_path, planted_corpus)
        args[args.index("--lexicon") + 1] = str(tmp_path / "nope.txt")
        assert cli.main(args) == 2

    def test_rerun_byte_identical_except_timestamp(self, tmp_path, planted_corpus):
        assert cli.main(build_args(tmp_path, planted_corpus, out_name="a")) == 0
        time.sleep(0.01)
        assert cli.main(build_args(tmp_path, planted_corpus, out_name="b")) == 0
        for name in ["main.txt", "secondary.txt", "review_report.txt", "length_distribution.csv"]:
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
        meta_a = json.loads((tmp_path / "a" / "build_meta.json").read_text())
        meta_b = json.loads((tmp_path / "b" / "build_meta.json").read_text())
        meta_a.pop("built_at"), meta_b.pop("built_at")
        assert meta_a == meta_b

    def test_no_candidates_warns_exit_1(self, tmp_path):
        corpus_dir = tmp_path / "corpus"
        corpus_dir.mkdir()
        (corpus_dir / "c.txt").write_text("ir un es par\n", encoding="utf-8")
        lexicon = tmp_path / "lex.txt"
        lexicon.write_text("saule\n", encoding="utf-8")
        inflections = tmp_path / "inf.tsv"
        inflections.write_text("", encoding="utf-8")
        code = cli.main([
            "build-lists",
            "--corpus-dir", str(corpus_dir),
            "--lexicon", str(lexicon),
            "--inflections", str(inflections),
            "--out-dir", str(tmp_path / "out"),
        ])
        assert code == 1


@pytest.fixture
def session_log(tmp_path, word_fixture_200):
    main = word_fixture_200[:10]
    answers = {pid: main[pid] for pid in range(10)}
    sessions = make_sessions(300, answers, word_fixture_200[10:60], seed=31)
    log_path = tmp_path / "sessions.jsonl"
    with open(log_path, "w", encoding="utf-8") as handle:
        for session in sessions:
            handle.write(analytics.session_to_json(session) + "\n")
    lists_dir = tmp_path / "lists"
    lists_dir.mkdir()
    write_word_list(main, lists_dir / "main.txt")
    write_word_list(sorted(word_fixture_200[10:60]), lists_dir / "secondary.txt")
    return log_path, lists_dir, sessions, answers


class TestAnalyze:
    def test_difficulty_matches_library(self, tmp_path, session_log):
        log_path, lists_dir, sessions, answers = session_log
        out = tmp_path / "reports"
        code = cli.main([
            "analyze", "--log", str(log_path), "--out-dir", str(out),
            "--report", "difficulty", "--lists-dir", str(lists_dir),
        ])
        assert code == 0
        expected, _ = analytics.difficulty_ranking(sessions, answers)
        with open(out / "difficulty.csv", encoding="utf-8") as handle:
            rows = list(csv.DictReader(handle))
        assert [int(r["puzzle_id"]) for r in rows] == [e.puzzle_id for e in expected]
        assert [int(r["fail_count"]) for r in rows] == [e.fail_count for e in expected]
        assert [r["word"] for r in rows] == [e.word for e in expected]

    def test_difficulty_without_lists_exit_2(self, tmp_path, session_log):
        log_path, _, _, _ = session_log
        code = cli.main([
            "analyze", "--log", str(log_path), "--out-dir", str(tmp_path / "r"),
            "--report", "difficulty",
        ])
        assert code == 2

    def test_paths_report_emits_valid_dot(self, tmp_path, session_log):
        log_path, _, sessions, _ = session_log
        out = tmp_path / "reports"
        code = cli.main([
            "analyze", "--log", str(log_path), "--out-dir", str(out),
            "--report", "paths", "--puzzle", "4",
        ])
        assert code == 0
        parsed = parse_dot((out / "paths_4.dot").read_text(encoding="utf-8"))
        graph = analytics.guess_path_graph(sessions, 4)
        assert len(parsed.edges) == len(graph.edges)

    def test_default_reports_on_fixture_log(self, tmp_path, session_log):
        log_path, _, sessions, answers = session_log
        out = tmp_path / "reports"
        assert cli.main(["analyze", "--log", str(log_path), "--out-dir", str(out)]) == 0
        assert (out / "timeline.csv").exists()
        assert (out / "top_guesses_turn1.csv").exists()
        for pid in answers:
            assert (out / f"distribution_{pid}.csv").exists()
            assert (out / f"paths_{pid}.dot").exists()

    def test_empty_log_zero_row_reports(self, tmp_path):
        log_path = tmp_path / "empty.jsonl"
        log_path.write_text("", encoding="utf-8")
        out = tmp_path / "reports"
        code = cli.main([
            "analyze", "--log", str(log_path), "--out-dir", str(out),
            "--report", "timeline", "--report", "top-guesses", "--turn", "1",
        ])
        assert code == 0
        assert (out / "timeline.csv").read_text(encoding="utf-8") == "date,unique_forms\n"
        assert (out / "top_guesses_turn1.csv").read_text(encoding="utf-8") == "word,count\n"

    def test_missing_log_exit_2(self, tmp_path):
        code = cli.main([
            "analyze", "--log", str(tmp_path / "nope.jsonl"), "--out-dir", str(tmp_path),
        ])
        assert code == 2

    def test_bad_turn_exit_2(self, tmp_path, session_log):
        log_path, _, _, _ = session_log
        code = cli.main([
            "analyze", "--log", str(log_path), "--out-dir", str(tmp_path / "r"),
            "--report", "top-guesses", "--turn", "9",
        ])
        assert code == 2


class TestServe:
    def test_missing_lists_dir_exit_2(self, tmp_path):
        code = cli.main([
            "serve", "--lists-dir", str(tmp_path / "nope"),
            "--log", str(tmp_path / "log.jsonl"),
        ])
        assert code == 2

    def test_port_in_use_exit_2(self, tmp_path, word_fixture_200):
        lists_dir = tmp_path / "lists"
        lists_dir.mkdir()
        write_word_list(word_fixture_200[:10], lists_dir / "main.txt")
        write_word_list(word_fixture_200[10:20], lists_dir / "secondary.txt")
        with socket.socket() as sock:
            sock.bind(("127.0.0.1", 0))
            sock.listen(1)
            port = sock.getsockname()[1]
            code = cli.main([
                "serve", "--lists-dir", str(lists_dir),
                "--log", str(tmp_path / "log.jsonl"),
                "--bind", f"127.0.0.1:{port}",
            ])
        assert code == 2

    def test_serves_and_sigterm_keeps_log_intact(self, tmp_path, word_fixture_200):
        lists_dir = tmp_path / "lists"
        lists_dir.mkdir()
        write_word_list(word_fixture_200[:10], lists_dir / "main.txt")
        write_word_list(sorted(word_fixture_200[10:30]), lists_dir / "secondary.txt")
        log_path = tmp_path / "log.jsonl"
        port = free_port()
        proc = subprocess.Popen(
            serve_command(lists_dir, log_path, port),
            stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL,
        )
        try:
            wait_for_server(port)
            base = f"http://127.0.0.1:{port}"
            today = httpx.get(f"{base}/api/puzzle/today")
            assert today.status_code == 200
            answer_pid = today.json()["puzzle_id"]

            token = httpx.post(f"{base}/api/session", json={"client_id": "k1"}).json()["token"]
            guess = word_fixture_200[answer_pid % 10]
            httpx.post(f"{base}/api/session/{token}/guess", json={"guess": guess})
            final = httpx.post(f"{base}/api/session/{token}/finalize")
            assert final.status_code == 200

            proc.send_signal(signal.SIGTERM)
            proc.wait(timeout=10)
            sessions, skipped = analytics.parse_session_log(log_path)
            assert skipped == 0
            assert len(sessions) == 1
        finally:
            if proc.poll() is None:
                proc.kill()
                proc.wait()
