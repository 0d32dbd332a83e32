from django.test import SimpleTestCase


def _square_or_none(x):
    return x * x if x % 3 == 2 else None


def _square(x):
    return x * x


class TestOrderedHelpers(SimpleTestCase):
    def test_ordered_map(self):
        """
        ordered_map should return results in input order for any number of workers
        :return:
        """
        from ellipticity.parallel import ordered_map
        items = list(range(10))
        expected = [x * x for x in items]
        self.assertEqual(ordered_map(_square, items, 1), expected)
        self.assertEqual(ordered_map(_square, items, 3), expected)

    def test_ordered_first(self):
        """
        ordered_first should return the first non-None result in input order, not the first to finish
        :return:
        """
        from ellipticity.parallel import ordered_first
        items = [0, 1, 5, 2, 8]
        self.assertEqual(ordered_first(_square_or_none, items, 1), 25)
        self.assertEqual(ordered_first(_square_or_none, items, 2), 25)
        self.assertIsNone(ordered_first(_square_or_none, [0, 1, 3], 2))
        self.assertIsNone(ordered_first(_square_or_none, [], 4))
