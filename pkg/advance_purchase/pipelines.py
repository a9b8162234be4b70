# -*- coding: utf-8 -*-

# Writers for the tables the experiments produce.
#
# Sweeps and verification failures are both written through CsvPipeline.

import io
from pathlib import Path

import advance_purchase.settings


class CsvPipeline(object):

    float_format = advance_purchase.settings.CSV_FLOAT_FORMAT
    lineterminator = advance_purchase.settings.CSV_LINE_TERMINATOR

    def render(self, table):
        """
        Render a table as CSV text

        Args:
            table (pandas.DataFrame): the table to render

        Returns:
            str, header row first, no index column
        """
        buffer = io.StringIO()
        table.to_csv(buffer, index=False, float_format=self.float_format,
                     lineterminator=self.lineterminator)
        return buffer.getvalue()

    def save_table(self, table, save_path):
        """
        Save a single table

        Args:
            table (pandas.DataFrame): to be saved to hard drive
            save_path (str or Path): destination, parent directories are
                created as needed

        Returns:
            Path of the written file
        """
        save_path = Path(save_path)
        save_dir = save_path.parent

        if not save_dir.exists():
            save_dir.mkdir(parents=True)

        with save_path.open("w", encoding="utf-8", newline="") as f:
            f.write(self.render(table))

        return save_path
