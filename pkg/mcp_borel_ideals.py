#!/usr/bin/env python3
"""
MCP server for t-spread principal Borel ideals
Exposes every command of python/borel_cli.py as a tool returning the JSON report
"""
import asyncio
import sys
import logging
from pathlib import Path
from typing import Any, Dict

# Add python directory to path
sys.path.insert(0, str(Path(__file__).parent / "python"))

# MCP imports
from mcp.server import Server
from mcp.types import Tool, TextContent, CallToolResult
import mcp.server.stdio

from borel_cli import COMMANDS, EXIT_OK, run
from utils.file_utils import FileUtils
from utils.run_config import GuardLimits, RunConfig
from utils.text_utils import TextUtils

# Configure logging (stderr; stdout carries the protocol)
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s', stream=sys.stderr)
logger = logging.getLogger(__name__)

app = Server("borel-ideals")

TOOL_DESCRIPTIONS = {
    'gens': "Minimal generators of B_t(u) in decreasing lex order",
    'dual': "Alexander dual generators of B_t(u), one per facet",
    'facets': "Facets of the Stanley-Reisner complex with their form and the minimal primes",
    'scm-check': "Order the dual generators and certify linear quotients (sequentially Cohen-Macaulay)",
    'sort': "Sort a tuple of equal-degree monomials",
    'rees-gb': "Closed-form Gröbner basis of the Rees algebra toric ideal (verify runs Buchberger)",
    'ell-exchange': "Check the exchange property for standard monomials of degree N",
    'lex-witness': "Show the lex Gröbner basis of the fiber ideal is not quadratic",
    'fiber-dim': "Rank of the generator exponent matrix (dimension of the fiber ring)",
    'power-depth': "Projective dimension and depth of S/I^k from lex linear quotients",
    'limdepth-witness': "Monomial of I^k whose colon ideal is (x_1, ..., x_{n-1})",
    'ass': "Associated primes of I^k by irreducible decomposition",
    'persistence': "Check Ass(I^k) ⊆ Ass(I^(k+1)) up to kmax",
    'reproduce': "Run every acceptance check",
    'oracle-decompose': "Irreducible decomposition of a monomial ideal given by --gens",
}

INPUT_SCHEMA = {
    "type": "object",
    "properties": {
        "n": {"type": "integer", "description": "Number of variables"},
        "t": {"type": "integer", "description": "Spread parameter"},
        "u": {"type": "string", "description": "Support of u as 1-based indices, e.g. \"2,4,9\""},
        "k": {"type": "integer", "description": "Power of the ideal", "default": 1},
        "kmax": {"type": "integer", "description": "Largest power for persistence", "default": 3},
        "N": {"type": "integer", "description": "Degree of standard monomials", "default": 2},
        "seed": {"type": "integer", "description": "Seed for randomized suites", "default": 20240101},
        "monomials": {"type": "string", "description": "Comma-separated monomials"},
        "gens": {"type": "string", "description": "Comma-separated ideal generators"},
        "verify": {"type": "boolean", "description": "Cross-check against the brute-force oracle",
                   "default": False},
        "quick": {"type": "boolean", "description": "Reduced instance counts", "default": False},
    },
}


@app.list_tools()
async def list_tools():
    """List one tool per command"""
    return [Tool(name=name.replace('-', '_'), description=TOOL_DESCRIPTIONS[name], inputSchema=INPUT_SCHEMA)
            for name in COMMANDS]


def config_from_arguments(args: Dict[str, Any]) -> RunConfig:
    u = args.get("u") or []
    if isinstance(u, str):
        u = TextUtils.parse_index_list(u)
    return RunConfig(
        n=args.get("n"), t=args.get("t"), u=list(u),
        k=args.get("k", 1), kmax=args.get("kmax", 3), N=args.get("N", 2),
        seed=args.get("seed", 20240101), output_format="json",
        monomials=args.get("monomials"), generators=args.get("gens"),
        verify=args.get("verify", False), quick=args.get("quick", False),
        guards=GuardLimits.from_env(),
    )


@app.call_tool()
async def call_tool(name: str, arguments: Dict[str, Any]):
    """Handle tool calls"""
    command = name.replace('_', '-')
    try:
        logger.info(f"Tool called: {name} with args: {arguments}")
        config = config_from_arguments(arguments or {})
        status, report = await asyncio.to_thread(run, command, config)
        return CallToolResult(
            content=[TextContent(type="text", text=FileUtils.dumps(report))],
            isError=status != EXIT_OK
        )
    except Exception as e:
        logger.error(f"Tool execution failed: {e}", exc_info=True)
        return CallToolResult(
            content=[TextContent(type="text", text=f"Error running {command}: {str(e)}")],
            isError=True
        )


async def main():
    """Main entry point"""
    logger.info("Starting MCP server (borel-ideals)")
    try:
        async with mcp.server.stdio.stdio_server() as (read_stream, write_stream):
            await app.run(
                read_stream,
                write_stream,
                app.create_initialization_options()
            )
    except asyncio.CancelledError:
        pass


if __name__ == "__main__":
    try:
        asyncio.run(main())
    except KeyboardInterrupt:
        print("\n👋 Server stopped by user", file=sys.stderr)
