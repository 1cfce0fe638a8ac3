import sys

import click

from .render import KINDS, SchemaError, render


@click.command()
@click.option("--kind", required=True, type=click.Choice(sorted(KINDS)),
              help="Which CSV product to render.")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True),
              help="Input CSV path.")
@click.option("--out", "out_path", required=True, type=click.Path(),
              help="Output image path (.png or .svg).")
def main(kind, in_path, out_path):
    """Render a simulator CSV to a figure."""
    try:
        render(kind, in_path, out_path)
    except SchemaError as exc:
        click.echo(f"schema error: {exc}", err=True)
        sys.exit(2)
    click.echo(f"wrote {out_path}")


if __name__ == "__main__":
    main()
