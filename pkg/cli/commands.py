"""
Command-line interface for the MBR toolkit
Verbs: decode, curve, score, analyze {length|freq|copies|hallucinations}, noise, split
"""

import argparse
import logging
import os
import sys
from collections import OrderedDict
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from analysis.frequency import (
    BUCKET_SCHEMES, build_frequency_table, bucket_curve, token_probability_by_bucket, training_distribution
)
from analysis.lengths import REFERENCE_ROW, length_stats
from analysis.pathology import COPY_ANCHORS, OVERLAP_MODES, PathologyDetector, pathology_report
from config.settings import Settings, load_settings
from mbr.pool import DecodeResult, SamplePool
from metrics.corpus import CORPUS_METRICS, corpus_scores, normalize_metric_name
from metrics.utility import UtilityConfig, resolve_utility
from noise.corpus import DEFAULT_NOISE_GRID, NOISE_MODES, inject_copy_noise, split_holdout
from storage.corpus_files import read_lines, read_parallel, write_parallel
from storage.pool_file import PoolFile, read_decode_results, write_decode_results, write_selections
from storage.reports import ReportWriter, report_config
from utils.helpers import format_score, mean_and_std, parse_float_list, parse_grid
from utils.pool_runner import PoolRunner

logger = logging.getLogger(__name__)

CURVE_COLUMNS = ['size', 'rep', 'metric', 'value']
CURVE_SUMMARY_COLUMNS = ['size', 'metric', 'mean', 'std', 'reps', 'sample_mean', 'sample_std']
PATHOLOGY_COLUMNS = ['kind', 'num_pools', 'num_samples', 'num_flagged_samples', 'num_flagged_selections',
                     'flagged_rate_in_pools', 'flagged_rate_in_selections', 'flagged_rate_in_beam',
                     'mean_utility_flagged', 'mean_utility_all']


def _named_paths(values: Optional[Sequence[str]], name_from_file: bool = True) -> List[Tuple[Optional[str], str]]:
    """NAME=PATH specs; a bare PATH is named after its file (or None)"""
    named = []
    for value in values or []:
        if '=' in value:
            name, path = value.split('=', 1)
        else:
            path = value
            name = os.path.splitext(os.path.basename(value))[0] if name_from_file else None
        named.append((name, path))
    return named


def _strip_jsonl(path: str) -> str:
    return path[:-len('.jsonl')] if path.endswith('.jsonl') else path


def _p_label(p: float) -> str:
    return format(p, 'g')


class CommandLine:
    """Argument parsing and command handlers; handlers return a result envelope"""

    def __init__(self, settings: Optional[Settings] = None, out: Callable[[str], None] = print):
        self.settings = settings if settings is not None else load_settings()
        self.out = out
        self.handlers: Dict[str, Callable[[argparse.Namespace], Dict[str, Any]]] = {}
        self.parser = self.setup_commands()

    # ------------------------------------------------------------------ parser

    def setup_commands(self) -> argparse.ArgumentParser:
        s = self.settings
        parser = argparse.ArgumentParser(prog='mbr', description='Sample-based MBR decoding and bias diagnostics')
        parser.add_argument('--verbose', '-v', action='store_true', help='debug logging')
        verbose = argparse.ArgumentParser(add_help=False)
        verbose.add_argument('--verbose', '-v', action='store_true', default=argparse.SUPPRESS)
        subparsers = parser.add_subparsers(dest='command', metavar='command')
        subparsers.required = True

        utility = argparse.ArgumentParser(add_help=False)
        utility.add_argument('--utility', default=s.utility, help=f'utility preset (default {s.utility})')
        utility.add_argument('--symmetric', action='store_true', help='harmonic mean of both directions')
        utility.add_argument('--no-self', dest='include_self', action='store_false',
                             help='leave the j = i term out of expected utilities')
        utility.add_argument('--seed', type=int, default=s.seed)
        utility.add_argument('--workers', type=int, default=s.workers)

        decode = subparsers.add_parser('decode', parents=[verbose, utility], help='MBR-decode every pool of a file')
        decode.add_argument('pools', help='JSONL pool file')
        decode.add_argument('--num-samples', type=int, default=s.num_samples)
        decode.add_argument('--output', help='decode results (JSONL)')
        decode.add_argument('--selections', help='selected translations, one per line')
        decode.add_argument('--evaluate', action='store_true', help='require references and score selections')
        self.handlers['decode'] = self.cmd_decode

        curve = subparsers.add_parser('curve', parents=[verbose, utility], help='quality vs number of samples')
        curve.add_argument('pools', help='JSONL pool file')
        curve.add_argument('--grid', default=s.curve_grid, help='start:stop:step or comma list')
        curve.add_argument('--reps', type=int, default=s.curve_reps)
        curve.add_argument('--metric', default='chrf1', help=f'one of {CORPUS_METRICS}')
        curve.add_argument('--report-dir', default=s.report_dir)
        curve.add_argument('--name', default='curve', help='report file stem')
        self.handlers['curve'] = self.cmd_curve

        score = subparsers.add_parser('score', parents=[verbose], help='corpus-level evaluation')
        score.add_argument('hyp_file')
        score.add_argument('ref_file')
        score.add_argument('--metric', default='chrf2', help=f'comma list from {CORPUS_METRICS}')
        self.handlers['score'] = self.cmd_score

        analyze = subparsers.add_parser('analyze', help='bias diagnostics')
        kinds = analyze.add_subparsers(dest='analysis', metavar='analysis')
        kinds.required = True
        reports = argparse.ArgumentParser(add_help=False)
        reports.add_argument('--report-dir', default=s.report_dir)
        reports.add_argument('--name', help='report file stem (defaults to the analysis name)')

        length = kinds.add_parser('length', parents=[verbose, reports], help='mean token counts per system')
        length.add_argument('--pools', help='pool file (reference, sample and beam rows)')
        length.add_argument('--decoded', action='append', help='decode results, NAME=PATH or PATH')
        length.add_argument('--corpus', action='append', help='plain text corpus, NAME=PATH or PATH')

        freq = kinds.add_parser('freq', parents=[verbose, reports], help='token probability per frequency bucket')
        freq.add_argument('--train', help='training target side, one sentence per line')
        freq.add_argument('--corpus', action='append',
                          help='translations, NAME=PATH or PATH; repeat a NAME for mean/std over runs')
        freq.add_argument('--buckets', choices=sorted(BUCKET_SCHEMES), default=s.buckets)

        for kind in ('copies', 'hallucinations'):
            pathology = kinds.add_parser(kind, parents=[verbose, reports],
                                         help=f'utility and selection rate of {kind}')
            pathology.add_argument('--pools', help='pool file')
            pathology.add_argument('--decoded', help='decode results for the pool file')
            pathology.add_argument('--no-self', dest='include_self', action='store_false')
            pathology.add_argument('--workers', type=int, default=s.workers)
            if kind == 'copies':
                pathology.add_argument('--copy-anchor', choices=COPY_ANCHORS, default=s.copy_anchor)
                pathology.add_argument('--copy-threshold', type=float, default=s.copy_threshold)
                pathology.add_argument('--copy-overlap', choices=OVERLAP_MODES, default=s.copy_overlap)
            else:
                pathology.add_argument('--halluc-threshold', type=float, default=s.halluc_threshold)
        self.handlers['analyze'] = self.cmd_analyze

        corpus_io = argparse.ArgumentParser(add_help=False)
        corpus_io.add_argument('--source', required=True, help='source side, or a source<TAB>target TSV')
        corpus_io.add_argument('--target', help='target side (omit for TSV input)')
        corpus_io.add_argument('--out', required=True, help='output path prefix')
        corpus_io.add_argument('--seed', type=int, default=s.seed)

        noise = subparsers.add_parser('noise', parents=[verbose, corpus_io], help='inject source-copy noise')
        noise.add_argument('--p', type=float, help='noise probability')
        noise.add_argument('--grid', help="comma list of probabilities, or 'default'")
        noise.add_argument('--mode', choices=NOISE_MODES, default='bernoulli')
        self.handlers['noise'] = self.cmd_noise

        split = subparsers.add_parser('split', parents=[verbose, corpus_io], help='random held-out split')
        split.add_argument('--size', type=int, required=True, help='held-out pairs')
        self.handlers['split'] = self.cmd_split
        return parser

    def parse(self, argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
        return self.parser.parse_args(argv)

    def execute(self, args: argparse.Namespace) -> Dict[str, Any]:
        try:
            return self.handlers[args.command](args)
        except (ValueError, OSError) as e:
            logger.debug("Command %s failed", args.command, exc_info=True)
            return {'success': False, 'error': str(e)}

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """Parse, execute and map the envelope to an exit code"""
        result = self.execute(self.parse(argv))
        if not result.get('success'):
            print(f"❌ {result.get('error', 'Unknown error')}", file=sys.stderr)
            return 1
        return 0

    # ----------------------------------------------------------------- helpers

    def _utility(self, name: str, symmetric: bool = False) -> UtilityConfig:
        return resolve_utility(name, symmetric=symmetric,
                               floor=self.settings.bleu_floor, add_k=self.settings.bleu_add_k,
                               function_words_path=self.settings.function_words)

    def _evaluate(self, hyps: Sequence[str], refs: Sequence[str], metrics: Sequence[str]) -> Dict[str, Any]:
        scores = OrderedDict()
        for metric in metrics:
            score = corpus_scores(hyps, refs, metric)
            self.out(f"📊 {score.format()}")
            scores[score.metric] = {'score': score.score, 'signature': score.signature}
        return scores

    @staticmethod
    def _references(pools: Sequence[SamplePool], purpose: str) -> List[str]:
        for pool in pools:
            if pool.reference is None:
                raise ValueError(f"Pool '{pool.id}' has no reference, required for {purpose}")
        return [pool.reference for pool in pools]

    @staticmethod
    def _align_results(pools: Sequence[SamplePool], results: Sequence[DecodeResult]) -> List[DecodeResult]:
        by_id = {result.pool_id: result for result in results}
        missing = [pool.id for pool in pools if pool.id not in by_id]
        if missing:
            raise ValueError(f"No decode result for pool(s): {', '.join(missing[:5])}")
        return [by_id[pool.id] for pool in pools]

    # ---------------------------------------------------------------- handlers

    def cmd_decode(self, args: argparse.Namespace) -> Dict[str, Any]:
        config = self._utility(args.utility, args.symmetric)
        pools = PoolFile(args.pools).read()
        if args.num_samples < 1:
            raise ValueError(f"--num-samples must be positive, got {args.num_samples}")
        references = self._references(pools, 'evaluation') if args.evaluate else None

        self.out(f"🔍 Decoding {len(pools)} pools with {config.name} ({args.num_samples} samples)")
        runner = PoolRunner(config, seed=args.seed, workers=args.workers,
                            include_self=args.include_self, progress=self.out)
        results = runner.decode_all(pools, num_samples=args.num_samples)

        output = args.output or f"{_strip_jsonl(args.pools)}.decoded.jsonl"
        selections = args.selections or f"{_strip_jsonl(output)}.txt"
        write_decode_results(output, results)
        write_selections(selections, results)
        self.out(f"✅ Wrote {len(results)} results to {output}")

        scores = {}
        if references is None and all(pool.reference is not None for pool in pools):
            references = [pool.reference for pool in pools]
        if references is not None:
            scores = self._evaluate([r.selected_text for r in results], references, CORPUS_METRICS)
        return {'success': True, 'results': len(results), 'output': output,
                'selections': selections, 'scores': scores}

    def cmd_curve(self, args: argparse.Namespace) -> Dict[str, Any]:
        config = self._utility(args.utility, args.symmetric)
        grid = parse_grid(args.grid)
        metric = normalize_metric_name(args.metric)
        pools = PoolFile(args.pools).read()
        references = self._references(pools, 'curve evaluation')

        self.out(f"🔍 Curve over {len(pools)} pools, sizes {grid[0]}..{grid[-1]} x {args.reps} reps ({config.name})")
        runner = PoolRunner(config, seed=args.seed, workers=args.workers,
                            include_self=args.include_self, progress=self.out)
        reports = runner.curves(pools, grid, args.reps, metric=None)

        rows, summary_rows, points = [], [], []
        for size in grid:
            mbr_values, sample_values = [], []
            for rep in range(args.reps):
                selected, baseline = [], []
                for pool, report in zip(pools, reports):
                    point = next(p for p in report.points if p.size == size and p.rep == rep)
                    selected.append(point.selected_text)
                    baseline.append(pool.samples[point.sample_baseline_index])
                value = corpus_scores(selected, references, metric).score
                sample_value = corpus_scores(baseline, references, metric).score
                mbr_values.append(value)
                sample_values.append(sample_value)
                rows.append({'size': size, 'rep': rep, 'metric': metric, 'value': value})
                points.append({'size': size, 'rep': rep, 'value': value, 'sample_value': sample_value,
                               'selected_index': [p.selected_index for r in reports
                                                  for p in r.points if p.size == size and p.rep == rep]})
            mean, std = mean_and_std(mbr_values)
            sample_mean, sample_std = mean_and_std(sample_values)
            summary_rows.append({'size': size, 'metric': metric, 'mean': mean, 'std': std, 'reps': args.reps,
                                 'sample_mean': sample_mean, 'sample_std': sample_std})
            self.out(f"📊 n={size:<4} {metric} {format_score(mean)} ± {format_score(std)} "
                     f"(sample {format_score(sample_mean)})")

        config_header = report_config(utility=config.describe(), grid=args.grid, reps=args.reps,
                                      seed=args.seed, metric=metric, include_self=args.include_self,
                                      pools=os.path.basename(args.pools))
        writer = ReportWriter(args.report_dir)
        paths = [writer.write_tsv(args.name, CURVE_COLUMNS, rows, config_header),
                 writer.write_tsv(f"{args.name}.summary", CURVE_SUMMARY_COLUMNS, summary_rows, config_header),
                 writer.write_json(args.name, {'points': points, 'summary': summary_rows}, config_header)]
        self.out(f"✅ Curve report written to {paths[0]}")
        return {'success': True, 'paths': paths, 'summary': summary_rows}

    def cmd_score(self, args: argparse.Namespace) -> Dict[str, Any]:
        hyps = read_lines(args.hyp_file)
        refs = read_lines(args.ref_file)
        if len(hyps) != len(refs):
            raise ValueError(f"Line count mismatch: {args.hyp_file} has {len(hyps)} lines, "
                             f"{args.ref_file} has {len(refs)}")
        metrics = [m.strip() for m in args.metric.split(',') if m.strip()]
        scores = self._evaluate(hyps, refs, metrics)
        return {'success': True, 'scores': scores}

    def cmd_analyze(self, args: argparse.Namespace) -> Dict[str, Any]:
        handler = {
            'length': self.analyze_length,
            'freq': self.analyze_freq,
            'copies': self.analyze_pathology,
            'hallucinations': self.analyze_pathology,
        }[args.analysis]
        return handler(args)

    def analyze_length(self, args: argparse.Namespace) -> Dict[str, Any]:
        if not (args.pools or args.decoded or args.corpus):
            raise ValueError("analyze length needs --pools, --decoded or --corpus")
        corpora: Dict[str, List[str]] = OrderedDict()
        if args.pools:
            pools = PoolFile(args.pools).read()
            references = [pool.reference for pool in pools if pool.reference is not None]
            if references:
                corpora[REFERENCE_ROW] = references
            corpora['sample'] = [sample for pool in pools for sample in pool.samples]
            beams = [pool.beam[0] for pool in pools if pool.beam]
            if beams:
                corpora['beam'] = beams
        for name, path in _named_paths(args.decoded, name_from_file=False):
            results = read_decode_results(path)
            row = name or results[0].utility_name
            corpora[row] = [result.selected_text for result in results]
        for name, path in _named_paths(args.corpus):
            corpora[name] = read_lines(path)

        table = length_stats(corpora)
        for row in table.to_rows():
            self.out(f"📊 {row['system']:<20} {row['mean_tokens']:.2f} tokens ({row['sentences']} sentences)")
        writer = ReportWriter(args.report_dir)
        name = args.name or 'length'
        rows = table.to_rows()
        paths = writer.write(name, ['system', 'mean_tokens', 'sentences', 'ratio_to_reference'], rows,
                             {'rows': rows}, report_config(tokenizer='13a'))
        return {'success': True, 'paths': paths, 'rows': table.rows}

    def analyze_freq(self, args: argparse.Namespace) -> Dict[str, Any]:
        if not args.train:
            raise ValueError("analyze freq needs --train (training target corpus)")
        table = build_frequency_table(read_lines(args.train), args.buckets)
        training = training_distribution(table)

        groups: Dict[str, List[List[str]]] = OrderedDict()
        for name, path in _named_paths(args.corpus):
            groups.setdefault(name, []).append(read_lines(path))

        columns = ['bucket', 'types', 'training']
        types = {label: 0 for label in table.labels()}
        for count in table.token_counts.values():
            types[table.labels()[table.bucket_index(count)]] += 1
        rows = [{'bucket': label, 'types': types[label], 'training': training[label]} for label in table.labels()]
        curves = {}
        for name, corpora in groups.items():
            if len(corpora) == 1:
                probabilities = token_probability_by_bucket(table, corpora[0])
                curves[name] = {label: {'mean': value, 'std': 0.0} for label, value in probabilities.items()}
                columns.append(name)
            else:
                curves[name] = bucket_curve(table, corpora)
                columns.extend([name, f"{name}_std"])
            for row in rows:
                row[name] = curves[name][row['bucket']]['mean']
                if len(corpora) > 1:
                    row[f"{name}_std"] = curves[name][row['bucket']]['std']

        for row in rows:
            extra = ' '.join(f"{name}={format_score(row[name])}" for name in groups)
            self.out(f"📊 {row['bucket']:<16} training={format_score(row['training'])} {extra}".rstrip())
        writer = ReportWriter(args.report_dir)
        name = args.name or 'freq'
        config_header = report_config(buckets=args.buckets, normalization='all corpus tokens incl. oov',
                                      tokenizer='13a')
        paths = writer.write(name, columns, rows, {'training': training, 'curves': curves, 'rows': rows},
                             config_header)
        return {'success': True, 'paths': paths, 'training': training, 'curves': curves}

    def analyze_pathology(self, args: argparse.Namespace) -> Dict[str, Any]:
        kind = 'copy' if args.analysis == 'copies' else 'hallucination'
        if not args.pools:
            raise ValueError(f"analyze {args.analysis} needs --pools")
        if not args.decoded:
            raise ValueError(f"analyze {args.analysis} needs --decoded")
        pools = PoolFile(args.pools).read()
        results = self._align_results(pools, read_decode_results(args.decoded))
        utility_names = {result.utility_name for result in results}
        if len(utility_names) != 1:
            raise ValueError(f"Decode results mix utilities: {sorted(utility_names)}")
        config = self._utility(utility_names.pop())

        if kind == 'copy':
            detector = PathologyDetector(kind, copy_threshold=args.copy_threshold,
                                         copy_anchor=args.copy_anchor, overlap_mode=args.copy_overlap)
        else:
            self._references(pools, 'hallucination detection')
            detector = PathologyDetector(kind, halluc_threshold=args.halluc_threshold)

        runner = PoolRunner(config, seed=0, workers=args.workers, include_self=args.include_self)
        matrices = runner.matrices_for(pools, results)
        report = pathology_report(pools, results, matrices, kind, detector=detector,
                                  include_self=args.include_self)

        flagged = 'n/a' if report.mean_utility_flagged is None else format_score(report.mean_utility_flagged)
        self.out(f"🔍 {kind}: {report.num_flagged_samples}/{report.num_samples} samples flagged "
                 f"({format_score(report.flagged_rate_in_pools)})")
        self.out(f"📊 mean utility flagged={flagged} all={format_score(report.mean_utility_all)}")
        self.out(f"📊 flagged selections {report.num_flagged_selections}/{report.num_pools} "
                 f"({format_score(report.flagged_rate_in_selections)})")

        writer = ReportWriter(args.report_dir)
        name = args.name or args.analysis
        config_header = report_config(utility=config.describe(), include_self=args.include_self,
                                      **detector.settings())
        paths = writer.write(name, PATHOLOGY_COLUMNS, [report.to_dict()], {'report': report.to_dict()},
                             config_header)
        return {'success': True, 'paths': paths, 'report': report.to_dict()}

    def cmd_noise(self, args: argparse.Namespace) -> Dict[str, Any]:
        if args.p is None and not args.grid:
            raise ValueError("noise needs --p or --grid")
        if args.grid:
            grid = list(DEFAULT_NOISE_GRID) if args.grid == 'default' else parse_float_list(args.grid)
        else:
            grid = [args.p]
        corpus = read_parallel(args.source, args.target)

        outputs = []
        for p in grid:
            noised = inject_copy_noise(corpus, p, args.seed, mode=args.mode)
            prefix = args.out if len(grid) == 1 else f"{args.out}.p{_p_label(p)}"
            paths = self._write_corpus(noised, prefix, args.target is not None, tags=True)
            meta_dir = os.path.dirname(prefix) or '.'
            paths.append(ReportWriter(meta_dir).write_json(
                os.path.basename(prefix),
                {'pairs': len(noised), 'injected': noised.num_injected()},
                report_config(p=p, seed=args.seed, mode=args.mode, noise='source-copy')))
            self.out(f"✅ p={_p_label(p)}: {noised.num_injected()}/{len(noised)} pairs copy-injected -> {prefix}")
            outputs.append({'p': p, 'injected': noised.num_injected(), 'paths': paths})
        return {'success': True, 'outputs': outputs}

    def cmd_split(self, args: argparse.Namespace) -> Dict[str, Any]:
        corpus = read_parallel(args.source, args.target)
        train, heldout = split_holdout(corpus, args.size, args.seed)
        aligned = args.target is not None
        paths = (self._write_corpus(train, f"{args.out}.train", aligned)
                 + self._write_corpus(heldout, f"{args.out}.heldout", aligned))
        self.out(f"✅ Split {len(corpus)} pairs: {len(train)} train, {len(heldout)} held out")
        return {'success': True, 'train': len(train), 'heldout': len(heldout), 'paths': paths}

    @staticmethod
    def _write_corpus(corpus, prefix: str, aligned: bool, tags: bool = False) -> List[str]:
        tags_path = f"{prefix}.tags" if tags else None
        if aligned:
            write_parallel(corpus, f"{prefix}.src", f"{prefix}.tgt", tags_path)
            paths = [f"{prefix}.src", f"{prefix}.tgt"]
        else:
            write_parallel(corpus, f"{prefix}.tsv", None, tags_path)
            paths = [f"{prefix}.tsv"]
        return paths + ([tags_path] if tags_path else [])
