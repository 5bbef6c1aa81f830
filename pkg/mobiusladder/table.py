"""
Tabular results and the files they are written to.

Every result object is a table: a fixed tuple of column names and rows of
plain Python scalars. CSV files start with a ``#`` block holding the run
configuration, one ``# key = value`` line per key, followed by the column
names and the data; floats are written with 17 significant digits so
they read back bit-for-bit. JSON files hold the same configuration under
``parameters``.
"""
import csv
import json

from abc import ABC, abstractmethod


def _format_cell(value):
    if isinstance(value, float):
        return format(value, '.17g')
    return str(value)


class ResultTable(ABC):
    """
    Abstract base class for result tables.

    Subclasses set ``columns`` and implement :meth:`rows`.
    """
    columns = ()

    @abstractmethod
    def rows(self):
        """
        The table rows, as a list of tuples of Python scalars.
        """
        pass

    def as_dict(self):
        """
        This table, as a dictionary.
        """
        return {
            'columns': list(self.columns),
            'rows': [list(r) for r in self.rows()],
        }

    def json(self, **json_kwargs):
        """
        The JSON representation of this table
        """
        return json.dumps(self.as_dict(), **json_kwargs)

    def pretty_print(self):
        """
        prints() a pretty version of the JSON of this table
        """
        print(self.json(indent=4, sort_keys=True))

    def write(self, path, header=(), fmt='csv'):
        """
        Writes the table to a file.

        Args:
            path (str): Destination file.
            header (list[tuple[str, str]]): (key, value) pairs describing
                the run, echoed ahead of the data.
            fmt (str): 'csv' or 'json'.
        """
        if fmt == 'csv':
            with open(path, 'w', newline='', encoding='utf-8') as fh:
                for key, value in header:
                    fh.write('# {} = {}\n'.format(key, value))
                writer = csv.writer(fh, lineterminator='\n')
                writer.writerow(self.columns)
                for row in self.rows():
                    writer.writerow([_format_cell(c) for c in row])
        elif fmt == 'json':
            data = {'parameters': dict(header)}
            data.update(self.as_dict())
            with open(path, 'w', newline='\n', encoding='utf-8') as fh:
                json.dump(data, fh, indent=2)
                fh.write('\n')
        else:
            raise ValueError("Unknown output format '{}'".format(fmt))

    def __len__(self):
        return len(self.rows())
